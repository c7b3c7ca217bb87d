#include "routhk/routh.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "routhk/errors.hpp"

namespace routhk {

double routhian_full(const LagrangianSystem& sys, const ConnectionOneForm& conn,
                     const MomentumValue& mu, const KJet& jet) {
  if (conn.n() != sys.n() || mu.rows() != conn.m() || mu.cols() != sys.k())
    throw IndexError("Routhian: connection, momentum and system shapes differ");
  double r = sys.value(jet);
  for (std::size_t a = 0; a < sys.k(); ++a) {
    std::vector<double> va(sys.n()), nu(conn.m());
    for (std::size_t i = 0; i < sys.n(); ++i) va[i] = jet.vel(i, a);
    for (std::size_t b = 0; b < conn.m(); ++b) nu[b] = mu(b, a);
    const auto form = conn.contract(jet.q, nu);
    for (std::size_t i = 0; i < sys.n(); ++i) r -= form[i] * va[i];
  }
  return r;
}

std::vector<std::size_t> BundleChart::fibre() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(base.begin(), base.end(), i) == base.end()) out.push_back(i);
  return out;
}

std::vector<double> BundleChart::embed(std::span<const double> qb) const {
  if (qb.size() != base.size()) throw IndexError("base point has wrong length");
  std::vector<double> q = fibre_point;
  q.resize(n, 0.0);
  for (std::size_t r = 0; r < base.size(); ++r) q[base[r]] = qb[r];
  return q;
}

std::vector<double> BundleChart::project(std::span<const double> q) const {
  std::vector<double> qb(base.size());
  for (std::size_t r = 0; r < base.size(); ++r) qb[r] = q[base[r]];
  return qb;
}

RouthReduction::RouthReduction(LagrangianSystem sys, SymmetryModel sym, ConnectionOneForm conn,
                               MomentumValue mu, BundleChart chart, std::string label)
    : sys_(std::move(sys)),
      sym_(std::move(sym)),
      conn_(std::move(conn)),
      mu_(std::move(mu)),
      chart_(std::move(chart)),
      label_(std::move(label)) {
  const std::size_t n = sys_.n();
  if (sym_.n() != n || conn_.n() != n || conn_.m() != sym_.m())
    throw IndexError("reduction: system, symmetry and connection shapes differ");
  if (mu_.rows() != sym_.m() || mu_.cols() != sys_.k())
    throw IndexError("reduction: momentum must be m x k");
  if (chart_.n != n) throw IndexError("reduction: chart dimension differs from the system");
  for (std::size_t b : chart_.base)
    if (b >= n) throw IndexError("reduction: base index out of range");
  if (chart_.fibre_point.size() != n) chart_.fibre_point.resize(n, 0.0);
}

void RouthReduction::check_base(const KJet& base) const {
  if (base.n != base_n() || base.k != k()) throw IndexError("base jet has the wrong shape");
  base.validate();
}

std::vector<Dual2> RouthReduction::lifted_velocities(std::span<const Dual2> w) const {
  const std::size_t n = sys_.n(), k = sys_.k(), bn = base_n(), m = sym_.m();
  std::vector<Dual2> q(chart_.fibre_point.begin(), chart_.fibre_point.end());
  for (std::size_t r = 0; r < bn; ++r) q[chart_.base[r]] = w[r];
  const auto a = conn_.function()(q);
  const auto lam = sym_.generator_function()(q);
  std::vector<Dual2> out(q);
  out.resize(n + n * k);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<Dual2> e(n, Dual2(0.0));
    for (std::size_t r = 0; r < bn; ++r) e[chart_.base[r]] = w[bn + r + bn * c];
    for (std::size_t g = 0; g < m; ++g) {
      Dual2 ae(0.0);
      for (std::size_t j = 0; j < n; ++j) ae += a[g * n + j] * e[j];
      const Dual2 coef = w[bn + bn * k + g + m * c] - ae;
      for (std::size_t i = 0; i < n; ++i) e[i] += coef * lam[g * n + i];
    }
    for (std::size_t i = 0; i < n; ++i) out[n + i + n * c] = e[i];
  }
  return out;
}

Dual2 RouthReduction::lifted_routhian(std::span<const Dual2> w) const {
  const std::size_t n = sys_.n(), k = sys_.k(), m = sym_.m();
  const auto z = lifted_velocities(w);
  Dual2 r = sys_.function()(z);
  const auto a = conn_.function()(std::span<const Dual2>(z).subspan(0, n));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t g = 0; g < m; ++g) {
      const double mu = mu_(g, c);
      if (mu == 0.0) continue;
      Dual2 s(0.0);
      for (std::size_t i = 0; i < n; ++i) s += a[g * n + i] * z[n + i + n * c];
      r -= mu * s;
    }
  return r;
}

KJet RouthReduction::horizontal_lift(const KJet& base) const {
  check_base(base);
  std::vector<double> w = base.coordinates();
  w.resize(w.size() + sym_.m() * k(), 0.0);
  const auto z = lifted_velocities(make_constants(w));
  std::vector<double> zv(z.size());
  for (std::size_t c = 0; c < z.size(); ++c) zv[c] = z[c].value();
  return KJet::from_coordinates(sys_.n(), k(), zv);
}

KJet RouthReduction::level_set_lift(const KJet& base, Matrix* xi_out) const {
  const KJet hor = horizontal_lift(base);
  const auto sol = solve_g_regularity(sys_, sym_, hor, mu_);
  if (xi_out) *xi_out = sol.xi;
  return shift_by_algebra(sym_, hor, sol.xi);
}

ReducedExpansion RouthReduction::expand(const KJet& base) const {
  const std::size_t m = sym_.m(), kk = k();
  Matrix xi;
  KJet lifted = level_set_lift(base, &xi);
  std::vector<double> w = base.coordinates();
  const std::size_t db = w.size(), dx = m * kk;
  for (std::size_t c = 0; c < kk; ++c)
    for (std::size_t g = 0; g < m; ++g) w.push_back(xi(g, c));
  const Taylor2 t = routhk::expand([this](std::span<const Dual2> v) { return lifted_routhian(v); }, w);

  Matrix hzz(db, db), hzx(db, dx), hxx(dx, dx);
  for (std::size_t r = 0; r < db; ++r) {
    for (std::size_t c = 0; c < db; ++c) hzz(r, c) = t.hessian(r, c);
    for (std::size_t c = 0; c < dx; ++c) hzx(r, c) = t.hessian(r, db + c);
  }
  for (std::size_t r = 0; r < dx; ++r)
    for (std::size_t c = 0; c < dx; ++c) hxx(r, c) = t.hessian(db + r, db + c);

  ReducedExpansion out;
  out.lifted = std::move(lifted);
  out.xi = xi;
  out.routhian.value = t.value;
  out.routhian.gradient.assign(t.gradient.begin(), t.gradient.begin() + static_cast<std::ptrdiff_t>(db));
  try {
    const LuFactor lu(hxx);
    out.dxi_dz = lu.solve(hzx.transpose()) * -1.0;
  } catch (const SingularMatrix& e) {
    throw NewtonDivergence(std::string("G-regularity fails at this base jet: ") + e.what());
  }
  out.routhian.hessian = hzz + hzx * out.dxi_dz;
  return out;
}

Matrix RouthReduction::fibre_velocities(const KJet& base) const {
  const KJet lifted = level_set_lift(base);
  const auto fib = chart_.fibre();
  Matrix w(fib.size(), k());
  for (std::size_t a = 0; a < k(); ++a)
    for (std::size_t r = 0; r < fib.size(); ++r) w(r, a) = lifted.vel(fib[r], a);
  return w;
}

Matrix RouthReduction::fibre_velocity_jacobian(const KJet& base) const {
  const ReducedExpansion e = expand(base);
  const std::size_t n = sys_.n(), kk = k(), m = sym_.m();
  std::vector<double> w = base.coordinates();
  const std::size_t db = w.size();
  for (std::size_t c = 0; c < kk; ++c)
    for (std::size_t g = 0; g < m; ++g) w.push_back(e.xi(g, c));
  const auto z = lifted_velocities(make_variables(w));
  const auto fib = chart_.fibre();
  Matrix out(fib.size() * kk, db);
  for (std::size_t a = 0; a < kk; ++a)
    for (std::size_t r = 0; r < fib.size(); ++r) {
      const Dual2& v = z[n + fib[r] + n * a];
      for (std::size_t c = 0; c < db; ++c) {
        double s = v.d1(c);
        for (std::size_t j = 0; j < m * kk; ++j) s += v.d1(db + j) * e.dxi_dz(j, c);
        out(r + fib.size() * a, c) = s;
      }
    }
  return out;
}

double reduced_routhian(const RouthReduction& red, const KJet& base) {
  return routhian_full(red.system(), red.connection(), red.mu(), red.level_set_lift(base));
}

Matrix magnetic_term(const RouthReduction& red, std::size_t a, std::span<const double> base_q) {
  if (a >= red.k()) throw IndexError("magnetic term component out of range");
  const std::size_t bn = red.base_n(), n = red.system().n(), m = red.symmetry().m();
  const auto q = red.chart().embed(base_q);
  std::vector<double> nu(m);
  for (std::size_t b = 0; b < m; ++b) nu[b] = red.mu()(b, a);
  const Matrix da = red.connection().exterior_derivative(q, nu);
  // Horizontal lifts of the base coordinate vectors.
  const Matrix conn = red.connection().at(q);
  const Matrix lam = red.symmetry().generators(q);
  Matrix hor(bn, n);
  for (std::size_t r = 0; r < bn; ++r) {
    const std::size_t col = red.chart().base[r];
    hor(r, col) = 1.0;
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t i = 0; i < n; ++i) hor(r, i) -= conn(g, col) * lam(g, i);
  }
  return hor * da * hor.transpose();
}

RouthSystem::RouthSystem(std::string label, std::size_t base_n, std::size_t k, MomentumValue mu,
                         Expander routhian, Magnetic magnetic)
    : label_(std::move(label)),
      base_n_(base_n),
      k_(k),
      mu_(std::move(mu)),
      expand_(std::move(routhian)),
      magnetic_(std::move(magnetic)) {}

RouthSystem RouthSystem::from_reduction(const RouthReduction& red) {
  auto shared = std::make_shared<RouthReduction>(red);
  return RouthSystem(
      red.label(), red.base_n(), red.k(), red.mu(),
      [shared](const KJet& b) { return shared->expand(b).routhian; },
      [shared](std::span<const double> q, std::size_t a) { return magnetic_term(*shared, a, q); });
}

RouthSystem RouthSystem::from_quadratic(std::string label, std::size_t base_n, std::size_t k,
                                        MomentumValue mu, QuadraticRouthian coefficients) {
  const std::size_t nk = base_n * k;
  if (coefficients.quadratic.rows() != nk || coefficients.quadratic.cols() != nk ||
      coefficients.linear.size() != nk)
    throw IndexError("quadratic Routhian coefficients have the wrong shape");
  auto c = coefficients;
  RouthSystem sys(
      std::move(label), base_n, k, std::move(mu),
      [c, base_n, nk](const KJet& b) {
        Taylor2 t;
        const std::size_t d = base_n + nk;
        t.gradient.assign(d, 0.0);
        t.hessian = Matrix(d, d);
        const auto qv = c.quadratic * std::span<const double>(b.v);
        t.value = c.constant;
        for (std::size_t j = 0; j < nk; ++j) {
          t.value += 0.5 * b.v[j] * qv[j] + c.linear[j] * b.v[j];
          t.gradient[base_n + j] = qv[j] + c.linear[j];
          for (std::size_t l = 0; l < nk; ++l) t.hessian(base_n + j, base_n + l) = c.quadratic(j, l);
        }
        return t;
      },
      [base_n](std::span<const double>, std::size_t) { return Matrix(base_n, base_n); });
  sys.coefficients_ = std::move(coefficients);
  return sys;
}

Taylor2 RouthSystem::expand(const KJet& base) const {
  if (base.n != base_n_ || base.k != k_) throw IndexError("base jet has the wrong shape");
  base.validate();
  return expand_(base);
}

Matrix RouthSystem::magnetic(std::span<const double> base_q, std::size_t a) const {
  return magnetic_(base_q, a);
}

QuadraticRouthian RouthSystem::quadratic_coefficients(std::span<const double> base_q,
                                                      std::span<const KJet> probes,
                                                      double* max_variation) const {
  const std::size_t nk = base_n_ * k_;
  KJet origin(base_n_, k_);
  origin.q.assign(base_q.begin(), base_q.end());
  const Taylor2 t = expand(origin);
  QuadraticRouthian c{Matrix(nk, nk), std::vector<double>(nk), t.value};
  for (std::size_t j = 0; j < nk; ++j) {
    c.linear[j] = t.gradient[base_n_ + j];
    for (std::size_t l = 0; l < nk; ++l) c.quadratic(j, l) = t.hessian(base_n_ + j, base_n_ + l);
  }
  if (max_variation) {
    double var = 0.0;
    for (const KJet& p : probes) {
      const Taylor2 tp = expand(p);
      for (std::size_t i = 0; i < base_n_; ++i) var = std::max(var, std::abs(tp.gradient[i]));
      for (std::size_t j = 0; j < nk; ++j)
        for (std::size_t l = 0; l < nk; ++l)
          var = std::max(var, std::abs(tp.hessian(base_n_ + j, base_n_ + l) - c.quadratic(j, l)));
    }
    *max_variation = var;
  }
  return c;
}

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Matrix json_matrix(const nlohmann::json& j, std::size_t rows, std::size_t cols, const char* what) {
  if (!j.is_array() || j.size() != rows) throw ParseError(std::string(what) + ": wrong number of rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError(std::string(what) + ": wrong number of columns");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

}  // namespace

std::string RouthSystem::to_json() const {
  nlohmann::json j;
  j["label"] = label_;
  j["base_n"] = base_n_;
  j["k"] = k_;
  j["mu"] = matrix_json(mu_);
  if (coefficients_) {
    j["coefficients"] = {{"quadratic", matrix_json(coefficients_->quadratic)},
                         {"linear", coefficients_->linear},
                         {"constant", coefficients_->constant}};
  }
  return j.dump(2);
}

RouthSystem RouthSystem::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const auto label = j.at("label").get<std::string>();
    const auto bn = j.at("base_n").get<std::size_t>();
    const auto k = j.at("k").get<std::size_t>();
    const auto& mu_j = j.at("mu");
    const std::size_t m = mu_j.size();
    const Matrix mu = json_matrix(mu_j, m, k, "mu");
    if (!j.contains("coefficients"))
      throw ParseError("reduced system JSON without coefficients cannot be evaluated");
    const auto& c = j.at("coefficients");
    QuadraticRouthian q{json_matrix(c.at("quadratic"), bn * k, bn * k, "quadratic"),
                        c.at("linear").get<std::vector<double>>(), c.at("constant").get<double>()};
    return from_quadratic(label, bn, k, mu, std::move(q));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("reduced system JSON: ") + e.what());
  }
}

NodalReport reduced_el_residual(const RouthSystem& rsys, const FieldSample& field,
                                DerivativeMode mode) {
  const std::size_t n = rsys.base_n(), k = rsys.k(), d = n + n * k;
  if (field.n() != n || field.k() != k) throw IndexError("reduced field does not fit the reduced system");
  const Grid& g = field.grid();
  const bool exact = use_exact(mode, field);
  NodalReport rep{g, n, residual_nodes(g, exact), {}};
  rep.values.assign(rep.nodes.size() * n, 0.0);

  auto magnetic_force = [&](const KJet& jet, std::size_t i) {
    double s = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      const Matrix b = rsys.magnetic(jet.q, a);
      for (std::size_t j = 0; j < n; ++j) s += b(i, j) * jet.vel(j, a);
    }
    return s;
  };

  if (exact) {
    parallel_for(rep.nodes.size(), [&](std::size_t r) {
      const auto p = prolong2(field, g.unflatten(rep.nodes[r]));
      const Taylor2 t = rsys.expand(p.jet);
      for (std::size_t i = 0; i < n; ++i) {
        double s = -t.gradient[i] - magnetic_force(p.jet, i);
        for (std::size_t a = 0; a < k; ++a) {
          const std::size_t row = n + i + n * a;
          for (std::size_t c = 0; c < d; ++c) s += t.hessian(row, c) * p.dz(a, c);
        }
        rep.values[r * n + i] = s;
      }
    });
    return rep;
  }

  std::vector<double> mom(g.size() * n * k), force(g.size() * n);
  parallel_for(g.size(), [&](std::size_t f) {
    const KJet jet = prolong(field, g.unflatten(f));
    const Taylor2 t = rsys.expand(jet);
    for (std::size_t j = 0; j < n * k; ++j) mom[f * n * k + j] = t.gradient[n + j];
    for (std::size_t i = 0; i < n; ++i) force[f * n + i] = t.gradient[i] + magnetic_force(jet, i);
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

}  // namespace routhk
