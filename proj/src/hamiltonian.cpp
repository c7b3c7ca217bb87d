#include "routhk/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "routhk/differentiate.hpp"
#include "routhk/errors.hpp"

namespace routhk {

HamiltonianSystem::HamiltonianSystem(std::size_t n, std::size_t k, JetFunction h,
                                     std::string label)
    : n_(n), k_(k), label_(std::move(label)) {
  ScalarFunction fz = [n, h = std::move(h)](std::span<const Dual2> z) {
    return h(z.subspan(0, n), z.subspan(n));
  };
  value_ = [fz](const KCojet& a) { return evaluate(fz, a.coordinates()); };
  gradient_ = [fz](const KCojet& a) { return expand(fz, a.coordinates()).gradient; };
}

HamiltonianSystem HamiltonianSystem::legendre_dual(LagrangianSystem sys) {
  HamiltonianSystem h;
  h.n_ = sys.n();
  h.k_ = sys.k();
  h.label_ = sys.label() + " (Legendre dual)";
  h.value_ = [sys](const KCojet& a) { return energy(sys, inverse_legendre(sys, a)); };
  // dH/dq = -dL/dq and dH/dp = v at v = FL^-1(p).
  h.gradient_ = [sys](const KCojet& a) {
    const KJet jet = inverse_legendre(sys, a);
    const Taylor2 t = sys.expand(jet);
    std::vector<double> g(sys.dim());
    for (std::size_t i = 0; i < sys.n(); ++i) g[i] = -t.gradient[i];
    for (std::size_t j = 0; j < jet.v.size(); ++j) g[sys.n() + j] = jet.v[j];
    return g;
  };
  return h;
}

void HamiltonianSystem::check(const KCojet& alpha) const {
  if (alpha.n != n_ || alpha.k != k_) throw IndexError("cojet shape does not match Hamiltonian");
  alpha.validate();
}

double HamiltonianSystem::value(const KCojet& alpha) const {
  check(alpha);
  return value_(alpha);
}

std::vector<double> HamiltonianSystem::gradient(const KCojet& alpha) const {
  check(alpha);
  return gradient_(alpha);
}

KJet inverse_legendre(const LagrangianSystem& sys, const KCojet& alpha) {
  if (alpha.n != sys.n() || alpha.k != sys.k()) throw IndexError("cojet shape does not match");
  const std::size_t n = sys.n(), nk = n * sys.k();
  KJet jet(n, sys.k());
  jet.q = alpha.q;
  const double scale = 1.0 + norm_inf(alpha.p);
  for (int it = 0; it <= 50; ++it) {
    const Taylor2 t = sys.expand(jet);
    std::vector<double> f(nk);
    for (std::size_t j = 0; j < nk; ++j) f[j] = t.gradient[n + j] - alpha.p[j];
    if (norm_inf(f) <= 1e-13 * scale) return jet;
    Matrix h(nk, nk);
    for (std::size_t r = 0; r < nk; ++r)
      for (std::size_t c = 0; c < nk; ++c) h(r, c) = t.hessian(n + r, n + c);
    std::vector<double> step;
    try {
      step = solve_dense(h, f);
    } catch (const SingularMatrix& e) {
      throw NewtonDivergence(std::string("Legendre map not invertible: ") + e.what());
    }
    for (std::size_t j = 0; j < nk; ++j) jet.v[j] -= step[j];
  }
  throw NewtonDivergence("inverse Legendre transform did not converge in 50 iterations");
}

Matrix canonical_form(std::size_t n, std::size_t k, std::size_t a) {
  if (a >= k) throw IndexError("polysymplectic component out of range");
  const std::size_t d = n + n * k;
  Matrix w(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = n + i + n * a;
    w(i, p) = 1.0;
    w(p, i) = -1.0;
  }
  return w;
}

MomentumValue cotangent_momentum(const SymmetryModel& sym, const KCojet& alpha) {
  if (alpha.n != sym.n()) throw IndexError("cojet and symmetry dimensions differ");
  const Matrix lam = sym.generators(alpha.q);
  MomentumValue mu(sym.m(), alpha.k);
  for (std::size_t b = 0; b < sym.m(); ++b)
    for (std::size_t a = 0; a < alpha.k; ++a) {
      double s = 0.0;
      for (std::size_t i = 0; i < alpha.n; ++i) s += alpha.mom(i, a) * lam(b, i);
      mu(b, a) = s;
    }
  return mu;
}

namespace {

void check_mu(const ConnectionOneForm& conn, const MomentumValue& mu, const KCojet& alpha) {
  if (conn.n() != alpha.n || mu.rows() != conn.m() || mu.cols() != alpha.k)
    throw IndexError("connection, momentum and cojet shapes differ");
}

// The shift map on stacked (q, p) coordinates, evaluable on duals.
std::vector<Dual2> shift_dual(const ConnectionOneForm& conn, const MomentumValue& mu,
                              std::size_t n, std::size_t k, std::span<const Dual2> z) {
  const auto q = z.subspan(0, n);
  const auto a = conn.function()(q);
  std::vector<Dual2> out(z.begin(), z.end());
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      Dual2 s(0.0);
      for (std::size_t al = 0; al < conn.m(); ++al) s += mu(al, c) * a[al * n + i];
      out[n + i + n * c] -= s;
    }
  return out;
}

double omega_pair(std::size_t n, std::size_t a, std::span<const double> x,
                  std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = n + i + n * a;
    s += x[i] * y[p] - x[p] * y[i];
  }
  return s;
}

}  // namespace

KCojet momentum_shift(const ConnectionOneForm& conn, const MomentumValue& mu,
                      const KCojet& alpha) {
  check_mu(conn, mu, alpha);
  KCojet out = alpha;
  for (std::size_t a = 0; a < alpha.k; ++a) {
    const auto col = [&] {
      std::vector<double> c(mu.rows());
      for (std::size_t b = 0; b < mu.rows(); ++b) c[b] = mu(b, a);
      return c;
    }();
    const auto form = conn.contract(alpha.q, col);
    for (std::size_t i = 0; i < alpha.n; ++i) out.mom(i, a) -= form[i];
  }
  return out;
}

std::vector<double> shift_identity_residual(const ConnectionOneForm& conn, const MomentumValue& mu,
                                            const KCojet& alpha, std::span<const double> u,
                                            std::span<const double> w) {
  check_mu(conn, mu, alpha);
  const std::size_t n = alpha.n, k = alpha.k, d = alpha.dim();
  if (u.size() != d || w.size() != d) throw IndexError("tangent vector has wrong length");
  const auto z = alpha.coordinates();
  // Pushforwards T S(u), T S(w) from duals seeded along u and w.
  std::vector<Dual2> args;
  args.reserve(d);
  for (std::size_t c = 0; c < d; ++c) {
    const double seed[2] = {u[c], w[c]};
    args.push_back(Dual2::seeded(z[c], seed));
  }
  const auto s = shift_dual(conn, mu, n, k, args);
  std::vector<double> su(d), sw(d);
  for (std::size_t c = 0; c < d; ++c) {
    require_finite(s[c], z, "momentum shift");
    su[c] = s[c].d1(0);
    sw[c] = s[c].d1(1);
  }
  std::vector<double> res(k);
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<double> nu(conn.m());
    for (std::size_t b = 0; b < conn.m(); ++b) nu[b] = mu(b, a);
    const Matrix da = conn.exterior_derivative(alpha.q, nu);
    double rhs = omega_pair(n, a, u, w);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rhs += da(i, j) * u[i] * w[j];
    res[a] = omega_pair(n, a, su, sw) - rhs;
  }
  return res;
}

std::vector<double> kham_residual(const HamiltonianSystem& sys, const KVectorFieldOnCojets& x,
                                  const KCojet& alpha) {
  const std::size_t n = sys.n(), k = sys.k(), d = sys.dim();
  const auto xs = x(alpha);
  if (xs.size() != k) throw IndexError("k-vector field has the wrong number of components");
  std::vector<double> res = sys.gradient(alpha);
  for (double& r : res) r = -r;
  for (std::size_t a = 0; a < k; ++a) {
    if (xs[a].size() != d) throw IndexError("k-vector field component has the wrong length");
    // Contraction of X into dq^i ^ dp_i^a is X^{q_i} dp_i^a - X^{p_i^a} dq^i.
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t p = n + i + n * a;
      res[p] += xs[a][i];
      res[i] -= xs[a][p];
    }
  }
  return res;
}

std::vector<double> legendre_pushforward(const LagrangianSystem& sys, const KJet& jet,
                                         std::span<const double> tangent) {
  const std::size_t n = sys.n(), d = sys.dim();
  if (tangent.size() != d) throw IndexError("tangent vector has wrong length");
  const Taylor2 t = sys.expand(jet);
  std::vector<double> out(d);
  for (std::size_t i = 0; i < n; ++i) out[i] = tangent[i];
  for (std::size_t r = n; r < d; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) s += t.hessian(r, c) * tangent[c];
    out[r] = s;
  }
  return out;
}

}  // namespace routhk
