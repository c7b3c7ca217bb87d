#include "routhk/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "routhk/errors.hpp"
#include "routhk/io.hpp"

namespace routhk {

namespace {

void check_shapes(const LagrangianSystem& sys, const SymmetryModel& sym) {
  if (sys.n() != sym.n()) {
    std::ostringstream msg;
    msg << "symmetry acts on dimension " << sym.n() << " but system '" << sys.label()
        << "' has n = " << sys.n();
    throw IndexError(msg.str());
  }
}

MomentumValue momentum_from(const Taylor2& t, const Matrix& lam, std::size_t n, std::size_t k) {
  MomentumValue mu(lam.rows(), k);
  for (std::size_t b = 0; b < lam.rows(); ++b)
    for (std::size_t a = 0; a < k; ++a) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += t.gradient[n + i + n * a] * lam(b, i);
      mu(b, a) = s;
    }
  return mu;
}

}  // namespace

MomentumValue lagrangian_momentum(const LagrangianSystem& sys, const SymmetryModel& sym,
                                  const KJet& jet) {
  check_shapes(sys, sym);
  return momentum_from(sys.expand(jet), sym.generators(jet.q), sys.n(), sys.k());
}

NodalReport momentum_field(const LagrangianSystem& sys, const SymmetryModel& sym,
                           const FieldSample& field) {
  check_shapes(sys, sym);
  const Grid& g = field.grid();
  const std::size_t m = sym.m(), k = sys.k();
  NodalReport rep{g, m * k, {}, {}};
  rep.nodes.resize(g.size());
  for (std::size_t f = 0; f < g.size(); ++f) rep.nodes[f] = f;
  rep.values.assign(g.size() * m * k, 0.0);
  parallel_for(g.size(), [&](std::size_t f) {
    const MomentumValue mu = lagrangian_momentum(sys, sym, prolong(field, g.unflatten(f)));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < m; ++b) rep.values[f * m * k + b + m * a] = mu(b, a);
  });
  return rep;
}

NodalReport noether_divergence(const LagrangianSystem& sys, const SymmetryModel& sym,
                               const FieldSample& field, DerivativeMode mode) {
  check_shapes(sys, sym);
  if (field.n() != sys.n() || field.k() != sys.k()) throw IndexError("field does not fit system");
  const Grid& g = field.grid();
  const std::size_t n = sys.n(), k = sys.k(), m = sym.m(), d = sys.dim();
  const bool exact = use_exact(mode, field);
  NodalReport rep{g, m, residual_nodes(g, exact), {}};
  rep.values.assign(rep.nodes.size() * m, 0.0);

  if (exact) {
    parallel_for(rep.nodes.size(), [&](std::size_t r) {
      const auto p = prolong2(field, g.unflatten(rep.nodes[r]));
      const Taylor2 t = sys.expand(p.jet);
      const Matrix lam = sym.generators(p.jet.q);
      const auto jac = sym.generator_jacobians(p.jet.q);
      for (std::size_t b = 0; b < m; ++b) {
        double s = 0.0;
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t i = 0; i < n; ++i) {
            const std::size_t row = sys.vindex(i, a);
            double dp = 0.0;
            for (std::size_t c = 0; c < d; ++c) dp += t.hessian(row, c) * p.dz(a, c);
            double dlam = 0.0;
            for (std::size_t j = 0; j < n; ++j) dlam += jac[b](i, j) * p.dz(a, j);
            s += dp * lam(b, i) + t.gradient[row] * dlam;
          }
        rep.values[r * m + b] = s;
      }
    });
    return rep;
  }

  const NodalReport mom = momentum_field(sys, sym, field.has_exact() ? field.without_exact() : field);
  parallel_for(rep.nodes.size(), [&](std::size_t r) {
    const MultiIndex node = g.unflatten(rep.nodes[r]);
    for (std::size_t b = 0; b < m; ++b) {
      double s = 0.0;
      for (std::size_t a = 0; a < k; ++a) s += stencil_partial(g, mom.values, m * k, b + m * a, a, node);
      rep.values[r * m + b] = s;
    }
  });
  return rep;
}

void MomentumDeviation::write_csv(std::ostream& os) const {
  os << "beta,a,max_abs_deviation\n";
  for (std::size_t b = 0; b < max_abs_deviation.rows(); ++b)
    for (std::size_t a = 0; a < max_abs_deviation.cols(); ++a)
      os << (b + 1) << "," << (a + 1) << "," << format_shortest(max_abs_deviation(b, a)) << "\n";
  if (!os) throw Error("failed writing momentum deviation CSV");
}

MomentumDeviation momentum_constancy(const LagrangianSystem& sys, const SymmetryModel& sym,
                                     const FieldSample& field, const MomentumValue& mu) {
  const std::size_t m = sym.m(), k = sys.k();
  if (mu.rows() != m || mu.cols() != k) throw IndexError("momentum value has wrong shape");
  MomentumDeviation out{Matrix(m, k), momentum_field(sys, sym, field)};
  const std::size_t stride = m * k;
  for (std::size_t r = 0; r < out.deviation.nodes.size(); ++r)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        double& v = out.deviation.values[r * stride + b + m * a];
        v -= mu(b, a);
        out.max_abs_deviation(b, a) = std::max(out.max_abs_deviation(b, a), std::abs(v));
      }
  return out;
}

KJet shift_by_algebra(const SymmetryModel& sym, const KJet& jet, const Matrix& xi) {
  if (xi.rows() != sym.m() || xi.cols() != jet.k) throw IndexError("algebra velocity has wrong shape");
  const Matrix lam = sym.generators(jet.q);
  KJet out = jet;
  for (std::size_t a = 0; a < jet.k; ++a)
    for (std::size_t g = 0; g < sym.m(); ++g) {
      const double x = xi(g, a);
      if (x == 0.0) continue;
      for (std::size_t i = 0; i < jet.n; ++i) out.vel(i, a) += x * lam(g, i);
    }
  return out;
}

Matrix momentum_jacobian(const LagrangianSystem& sys, const SymmetryModel& sym, const KJet& jet) {
  check_shapes(sys, sym);
  const Matrix h = hessian(sys, jet);
  const Matrix lam = sym.generators(jet.q);
  const std::size_t n = sys.n(), k = sys.k(), m = sym.m();
  Matrix jac(m * k, m * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t g = 0; g < m; ++g) {
          double s = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              s += lam(b, i) * h(i + n * a, j + n * c) * lam(g, j);
          jac(b + m * a, g + m * c) = s;
        }
  return jac;
}

GRegularitySolution solve_g_regularity(const LagrangianSystem& sys, const SymmetryModel& sym,
                                       const KJet& jet, const MomentumValue& mu) {
  check_shapes(sys, sym);
  const std::size_t m = sym.m(), k = sys.k();
  if (mu.rows() != m || mu.cols() != k) throw IndexError("momentum value has wrong shape");
  auto residual = [&](const Matrix& xi) {
    const MomentumValue j = lagrangian_momentum(sys, sym, shift_by_algebra(sym, jet, xi));
    std::vector<double> f(m * k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < m; ++b) f[b + m * a] = j(b, a) - mu(b, a);
    return f;
  };
  GRegularitySolution sol{Matrix(m, k), 0, 0.0};
  auto f = residual(sol.xi);
  sol.residual = norm_inf(f);
  for (int it = 0; it < 50; ++it) {
    if (sol.residual <= 1e-10) return sol;
    const KJet cur = shift_by_algebra(sym, jet, sol.xi);
    std::vector<double> step;
    try {
      step = solve_dense(momentum_jacobian(sys, sym, cur), f);
    } catch (const SingularMatrix& e) {
      throw NewtonDivergence(std::string("G-regularity fails near this jet: ") + e.what());
    }
    double t = 1.0;
    Matrix trial(m, k);
    std::vector<double> ft;
    for (int halve = 0; halve < 30; ++halve, t *= 0.5) {
      trial = sol.xi;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < m; ++b) trial(b, a) -= t * step[b + m * a];
      ft = residual(trial);
      if (norm_inf(ft) < sol.residual) break;
    }
    sol.xi = trial;
    f = ft;
    sol.residual = norm_inf(f);
    sol.iterations = it + 1;
  }
  if (sol.residual <= 1e-10) return sol;
  std::ostringstream msg;
  msg << "G-regularity Newton solve did not converge in 50 iterations (residual "
      << sol.residual << ")";
  throw NewtonDivergence(msg.str());
}

}  // namespace routhk
