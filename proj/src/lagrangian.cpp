#include "routhk/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "routhk/errors.hpp"

namespace routhk {

LagrangianSystem::LagrangianSystem(std::size_t n, std::size_t k, JetFunction l, std::string label)
    : n_(n), k_(k), label_(std::move(label)) {
  if (k == 0) throw InvalidParameters("a field theory needs k >= 1");
  fz_ = [n, l = std::move(l)](std::span<const Dual2> z) {
    return l(z.subspan(0, n), z.subspan(n));
  };
}

void LagrangianSystem::check(const KJet& jet) const {
  if (jet.n != n_ || jet.k != k_) {
    std::ostringstream msg;
    msg << "jet of shape (" << jet.n << ", " << jet.k << ") passed to system '" << label_
        << "' of shape (" << n_ << ", " << k_ << ")";
    throw IndexError(msg.str());
  }
  jet.validate();
}

double LagrangianSystem::value(const KJet& jet) const {
  check(jet);
  return evaluate(fz_, jet.coordinates());
}

Taylor2 LagrangianSystem::expand(const KJet& jet) const {
  check(jet);
  return routhk::expand(fz_, jet.coordinates());
}

KCojet legendre(const LagrangianSystem& sys, const KJet& jet) {
  const Taylor2 t = sys.expand(jet);
  KCojet c(sys.n(), sys.k());
  c.q = jet.q;
  for (std::size_t j = 0; j < jet.v.size(); ++j) c.p[j] = t.gradient[sys.n() + j];
  return c;
}

double legendre_fd_gap(const LagrangianSystem& sys, const KJet& jet) {
  const KCojet p = legendre(sys, jet);
  const auto g = fd_gradient(as_real(sys.function()), jet.coordinates());
  double gap = 0.0;
  for (std::size_t j = 0; j < p.p.size(); ++j)
    gap = std::max(gap, std::abs(p.p[j] - g[sys.n() + j]) / std::max(1.0, std::abs(p.p[j])));
  return gap;
}

double hessian_fd_gap(const LagrangianSystem& sys, const KJet& jet) {
  const Taylor2 t = sys.expand(jet);
  const auto z = jet.coordinates();
  const std::size_t d = z.size();
  double gap = 0.0;
  const double scale = std::max(1.0, t.hessian.max_abs());
  std::vector<double> zp = z;
  for (std::size_t c = 0; c < d; ++c) {
    zp[c] = z[c] + kFdStep;
    const auto gp = routhk::expand(sys.function(), zp).gradient;
    zp[c] = z[c] - kFdStep;
    const auto gm = routhk::expand(sys.function(), zp).gradient;
    zp[c] = z[c];
    for (std::size_t r = 0; r < d; ++r)
      gap = std::max(gap, std::abs(t.hessian(r, c) - (gp[r] - gm[r]) / (2 * kFdStep)) / scale);
  }
  return gap;
}

double energy(const LagrangianSystem& sys, const KJet& jet) {
  const Taylor2 t = sys.expand(jet);
  double e = -t.value;
  for (std::size_t j = 0; j < jet.v.size(); ++j) e += t.gradient[sys.n() + j] * jet.v[j];
  return e;
}

std::vector<double> energy_gradient(const LagrangianSystem& sys, const KJet& jet) {
  // dE = sum_{i,a} v^i_a d(dL/dv^i_a) - dL/dq dq; the velocity parts of
  // d(p.v) and dL cancel.
  const Taylor2 t = sys.expand(jet);
  const std::size_t n = sys.n(), d = sys.dim();
  std::vector<double> g(d, 0.0);
  for (std::size_t c = 0; c < d; ++c) {
    double s = 0.0;
    for (std::size_t j = 0; j < jet.v.size(); ++j) s += t.hessian(n + j, c) * jet.v[j];
    g[c] = s;
  }
  for (std::size_t i = 0; i < n; ++i) g[i] -= t.gradient[i];
  return g;
}

Matrix hessian(const LagrangianSystem& sys, const KJet& jet) {
  const Taylor2 t = sys.expand(jet);
  const std::size_t n = sys.n(), m = n * sys.k();
  Matrix h(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) h(r, c) = t.hessian(n + r, n + c);
  return h;
}

RegularityCertificate is_regular(const LagrangianSystem& sys, std::span<const KJet> jets,
                                 double tol) {
  if (jets.empty()) throw InvalidParameters("regularity needs at least one sample jet");
  RegularityCertificate cert;
  cert.min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < jets.size(); ++s) {
    const double p = min_abs_pivot(hessian(sys, jets[s]));
    if (p < cert.min_pivot) {
      cert.min_pivot = p;
      cert.worst_sample = s;
    }
  }
  cert.regular = cert.min_pivot > tol;
  return cert;
}

namespace {

void require_same_shape(const LagrangianSystem& sys, const FieldSample& field) {
  if (field.n() != sys.n() || field.k() != sys.k()) {
    std::ostringstream msg;
    msg << "field of shape (" << field.n() << ", " << field.k() << ") does not fit system '"
        << sys.label() << "' of shape (" << sys.n() << ", " << sys.k() << ")";
    throw IndexError(msg.str());
  }
}

NodalReport interior_report(const Grid& g, std::size_t ncomp, bool exact) {
  NodalReport rep{g, ncomp, residual_nodes(g, exact), {}};
  rep.values.assign(rep.nodes.size() * ncomp, 0.0);
  return rep;
}

}  // namespace

NodalReport el_residual(const LagrangianSystem& sys, const FieldSample& field,
                        DerivativeMode mode) {
  require_same_shape(sys, field);
  const Grid& g = field.grid();
  const std::size_t n = sys.n(), k = sys.k(), d = sys.dim();
  const bool exact = use_exact(mode, field);
  NodalReport rep = interior_report(g, n, exact);

  if (exact) {
    parallel_for(rep.nodes.size(), [&](std::size_t r) {
      const auto p = prolong2(field, g.unflatten(rep.nodes[r]));
      const Taylor2 t = sys.expand(p.jet);
      for (std::size_t i = 0; i < n; ++i) {
        double s = -t.gradient[i];
        for (std::size_t a = 0; a < k; ++a) {
          const std::size_t row = sys.vindex(i, a);
          for (std::size_t c = 0; c < d; ++c) s += t.hessian(row, c) * p.dz(a, c);
        }
        rep.values[r * n + i] = s;
      }
    });
    return rep;
  }

  // Momenta P^a_i and forces dL/dq^i at every node, then grid divergence.
  std::vector<double> mom(g.size() * n * k), force(g.size() * n);
  parallel_for(g.size(), [&](std::size_t f) {
    const KJet jet = prolong(field, g.unflatten(f));
    const Taylor2 t = sys.expand(jet);
    for (std::size_t j = 0; j < n * k; ++j) mom[f * n * k + j] = t.gradient[n + j];
    for (std::size_t i = 0; i < n; ++i) force[f * n + i] = t.gradient[i];
  });
  parallel_for(rep.nodes.size(), [&](std::size_t r) {
    const MultiIndex node = g.unflatten(rep.nodes[r]);
    for (std::size_t i = 0; i < n; ++i) {
      double s = -force[rep.nodes[r] * n + i];
      for (std::size_t a = 0; a < k; ++a) s += stencil_partial(g, mom, n * k, i + n * a, a, node);
      rep.values[r * n + i] = s;
    }
  });
  return rep;
}

Matrix lag_polysymplectic_form(const LagrangianSystem& sys, const KJet& jet, std::size_t a) {
  if (a >= sys.k()) throw IndexError("polysymplectic component out of range");
  const Taylor2 t = sys.expand(jet);
  const std::size_t n = sys.n(), d = sys.dim();
  Matrix w(d, d);
  // dq^i ^ dP: the covector dP^a_i = sum_c H(vindex(i,a), c) dz^c.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = sys.vindex(i, a);
    for (std::size_t c = 0; c < d; ++c) {
      const double h = t.hessian(row, c);
      w(i, c) += h;
      w(c, i) -= h;
    }
  }
  return w;
}

std::vector<double> ksym_residual(const LagrangianSystem& sys, const KVectorFieldOnJets& gamma,
                                  const KJet& jet) {
  const std::size_t d = sys.dim();
  const auto g = gamma(jet);
  if (g.size() != sys.k()) throw IndexError("k-vector field has the wrong number of components");
  std::vector<double> res = energy_gradient(sys, jet);
  for (double& r : res) r = -r;
  for (std::size_t a = 0; a < sys.k(); ++a) {
    if (g[a].size() != d) throw IndexError("k-vector field component has the wrong length");
    const Matrix w = lag_polysymplectic_form(sys, jet, a);
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) res[c] += w(r, c) * g[a][r];
  }
  return res;
}

}  // namespace routhk
