#include "routhk/liegroup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "routhk/errors.hpp"

namespace routhk {

LieAlgebraModel LieAlgebraModel::from_json(const std::string& text) {
  LieAlgebraModel alg;
  try {
    const auto j = nlohmann::json::parse(text);
    const auto m = j.at("m").get<std::size_t>();
    alg.structure = StructureConstants(m);
    for (const auto& e : j.at("structure")) {
      if (!e.is_array() || e.size() != 4)
        throw ParseError("structure entries must be [alpha, beta, gamma, value]");
      const auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>(), g = e[2].get<std::size_t>();
      if (a >= m || b >= m || g >= m) throw ParseError("structure index out of range");
      alg.structure.set(g, a, b, e[3].get<double>());
    }
    if (j.contains("labels")) alg.labels = j.at("labels").get<std::vector<std::string>>();
    if (alg.labels.empty())
      for (std::size_t b = 0; b < m; ++b) alg.labels.push_back("e" + std::to_string(b + 1));
    if (alg.labels.size() != m) throw ParseError("one label per basis element");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("Lie algebra JSON: ") + e.what());
  }
  const double jac = alg.structure.jacobi_residual();
  if (jac > 1e-12) {
    std::ostringstream msg;
    msg << "structure constants violate the Jacobi identity by " << jac;
    throw InvalidParameters(msg.str());
  }
  return alg;
}

std::string LieAlgebraModel::to_json() const {
  nlohmann::json j;
  const std::size_t m = dim();
  j["m"] = m;
  j["labels"] = labels;
  nlohmann::json s = nlohmann::json::array();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t g = 0; g < m; ++g)
        if (structure(g, a, b) != 0.0) s.push_back({a, b, g, structure(g, a, b)});
  j["structure"] = s;
  return j.dump(2);
}

std::vector<double> bracket(const LieAlgebraModel& alg, std::span<const double> xi,
                            std::span<const double> eta) {
  return alg.structure.bracket(xi, eta);
}

Matrix coadjoint_matrix(const LieAlgebraModel& alg, std::span<const double> nu) {
  const std::size_t m = alg.dim();
  if (nu.size() != m) throw IndexError("algebra covector has wrong length");
  Matrix mm(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t g = 0; g < m; ++g) mm(a, b) += nu[g] * alg.structure(g, a, b);
  return mm;
}

Matrix isotropy_algebra(const LieAlgebraModel& alg, std::span<const double> nu, double tol) {
  // xi is isotropic iff sum_alpha xi^alpha M_{alpha beta} = 0 for every beta.
  return null_space(coadjoint_matrix(alg, nu).transpose(), tol);
}

Matrix InvariantMetricModel::metric_at(std::span<const double> q) const {
  const auto g = metric(make_constants(q));
  const std::size_t nn = n();
  if (g.size() != nn * nn) throw IndexError("metric returned the wrong number of entries");
  Matrix out(nn, nn);
  for (std::size_t i = 0; i < nn * nn; ++i) out.data()[i] = g[i].value();
  return out;
}

Matrix locked_inertia(const InvariantMetricModel& met, std::span<const double> q) {
  const Matrix lam = met.symmetry.generators(q);
  const Matrix i = lam * met.metric_at(q) * lam.transpose();
  LuFactor check(i);  // throws SingularMatrix when the action is not locally free
  (void)check;
  return i;
}

std::vector<double> mechanical_connection(const InvariantMetricModel& met,
                                          std::span<const double> q, std::span<const double> v) {
  const Matrix lam = met.symmetry.generators(q);
  const auto gv = met.metric_at(q) * v;
  return solve_dense(locked_inertia(met, q), lam * gv);
}

namespace {

// Gaussian elimination with partial pivoting on dual numbers.
std::vector<Dual2> solve_dual(std::vector<Dual2> a, std::vector<Dual2> b, std::size_t n,
                              std::size_t nrhs) {
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k].value()) > std::abs(a[p * n + k].value())) p = i;
    if (std::abs(a[p * n + k].value()) < 1e-12) throw SingularMatrix("locked inertia is singular");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      for (std::size_t j = 0; j < nrhs; ++j) std::swap(b[k * nrhs + j], b[p * nrhs + j]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Dual2 f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      for (std::size_t j = 0; j < nrhs; ++j) b[i * nrhs + j] -= f * b[k * nrhs + j];
    }
  }
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = 0; j < nrhs; ++j) {
      Dual2 s = b[i * nrhs + j];
      for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * b[c * nrhs + j];
      b[i * nrhs + j] = s / a[i * n + i];
    }
  return b;
}

}  // namespace

ConnectionOneForm mechanical_connection_form(const InvariantMetricModel& met) {
  const std::size_t n = met.n(), m = met.symmetry.m();
  const auto gen = met.symmetry.generator_function();
  const auto metric = met.metric;
  return ConnectionOneForm(m, n, [=](std::span<const Dual2> q) {
    const auto lam = gen(q);
    const auto g = metric(q);
    // B = Lambda g (m x n), I = B Lambda^T (m x m), A = I^-1 B.
    std::vector<Dual2> b(m * n, Dual2(0.0)), inertia(m * m, Dual2(0.0));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) b[a * n + j] += lam[a * n + i] * g[i * n + j];
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t j = 0; j < n; ++j) inertia[a * m + c] += b[a * n + j] * lam[c * n + j];
    return solve_dual(std::move(inertia), std::move(b), m, n);
  });
}

namespace {

Matrix eval_plain(const ConfigurationMatrixFunction& f, std::span<const double> q, std::size_t rows,
                  std::size_t cols) {
  const auto v = f(make_constants(q));
  if (v.size() != rows * cols) throw IndexError("function returned the wrong number of entries");
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) out.data()[i] = v[i].value();
  return out;
}

}  // namespace

Matrix killing_residual(const MetricFunction& metric, const ConfigurationMatrixFunction& generator,
                        std::span<const double> q) {
  const std::size_t n = q.size();
  const Matrix g = eval_plain(metric, q, n, n);
  const Matrix lam = eval_plain(generator, q, 1, n);
  std::vector<Matrix> dg(n);  // dg[j] = d g / d q^j
  Matrix dlam(n, n);          // dlam(j, k) = d Lambda^j / d q^k
  std::vector<double> qp(q.begin(), q.end());
  for (std::size_t c = 0; c < n; ++c) {
    qp[c] = q[c] + kFdStep;
    const Matrix gp = eval_plain(metric, qp, n, n), lp = eval_plain(generator, qp, 1, n);
    qp[c] = q[c] - kFdStep;
    const Matrix gm = eval_plain(metric, qp, n, n), lm = eval_plain(generator, qp, 1, n);
    qp[c] = q[c];
    dg[c] = (gp - gm) * (1.0 / (2 * kFdStep));
    for (std::size_t j = 0; j < n; ++j) dlam(j, c) = (lp(0, j) - lm(0, j)) / (2 * kFdStep);
  }
  Matrix k(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        s += lam(0, j) * dg[j](a, i) + g(j, i) * dlam(j, a) + g(a, j) * dlam(j, i);
      k(a, i) = s;
    }
  return k;
}

std::vector<double> christoffel(const MetricFunction& metric, std::span<const double> q) {
  const std::size_t n = q.size();
  const auto gd = metric(make_variables(q));
  if (gd.size() != n * n) throw IndexError("metric returned the wrong number of entries");
  Matrix g(n, n);
  for (std::size_t i = 0; i < n * n; ++i) g.data()[i] = gd[i].value();
  auto dg = [&](std::size_t i, std::size_t j, std::size_t c) { return gd[i * n + j].d1(c); };
  const Matrix ginv = inverse(g);
  std::vector<double> gam(n * n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
          s += ginv(i, p) * 0.5 * (dg(p, j, k) + dg(p, k, j) - dg(j, k, p));
        gam[i * n * n + j * n + k] = s;
      }
  return gam;
}

double orbit_routhian(const LieAlgebraModel& alg, const ScalarFunction& ell, const Matrix& nu) {
  const std::size_t m = alg.dim(), k = nu.cols();
  if (nu.rows() != m) throw IndexError("orbit point must be m x k");
  const std::size_t d = m * k;
  std::vector<double> xi(d, 0.0), target(d);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < m; ++b) target[b + m * a] = nu(b, a);
  const double scale = 1.0 + norm_inf(target);
  for (int it = 0; it <= 50; ++it) {
    const Taylor2 t = expand(ell, xi);
    std::vector<double> f(d);
    for (std::size_t c = 0; c < d; ++c) f[c] = t.gradient[c] - target[c];
    if (norm_inf(f) <= 1e-13 * scale) {
      double r = t.value;
      for (std::size_t c = 0; c < d; ++c) r -= target[c] * xi[c];
      return r;
    }
    std::vector<double> step;
    try {
      step = solve_dense(t.hessian, f);
    } catch (const SingularMatrix& e) {
      throw NewtonDivergence(std::string("fibre derivative of l is not invertible: ") + e.what());
    }
    for (std::size_t c = 0; c < d; ++c) xi[c] -= step[c];
  }
  throw NewtonDivergence("inverse fibre derivative did not converge in 50 iterations");
}

double ad_invariance_residual(const LieAlgebraModel& alg, const Matrix& form) {
  const std::size_t m = alg.dim();
  double r = 0.0;
  std::vector<double> ex(m), ey(m), ez(m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z) {
        std::fill(ex.begin(), ex.end(), 0.0);
        std::fill(ey.begin(), ey.end(), 0.0);
        std::fill(ez.begin(), ez.end(), 0.0);
        ex[x] = ey[y] = ez[z] = 1.0;
        const auto xy = bracket(alg, ex, ey), xz = bracket(alg, ex, ez);
        double s = 0.0;
        for (std::size_t a = 0; a < m; ++a) s += xy[a] * form(a, z) + form(y, a) * xz[a];
        r = std::max(r, std::abs(s));
      }
  return r;
}

namespace a410 {

LieAlgebraModel algebra() {
  LieAlgebraModel alg{StructureConstants(4), {"e_x", "e_y", "e_z", "e_theta"}};
  alg.structure.set(2, 0, 1, -2.0);  // [e_x, e_y] = -2 e_z
  alg.structure.set(1, 0, 3, 1.0);   // [e_x, e_theta] = e_y
  alg.structure.set(0, 1, 3, -1.0);  // [e_y, e_theta] = -e_x
  return alg;
}

SymmetryModel symmetry() {
  // Coordinates (q, x, y, z, theta).
  return SymmetryModel(5, algebra().structure, [](std::span<const Dual2> c) {
    const Dual2 &x = c[1], &y = c[2];
    const Dual2 o(0.0), l(1.0);
    return std::vector<Dual2>{
        o, l, o, -y, o,   // E_x = d_x - y d_z
        o, o, l, x, o,    // E_y = d_y + x d_z
        o, o, o, l, o,    // E_z = d_z
        o, y, -x, o, l};  // E_theta = d_theta - x d_y + y d_x
  }, {"E_x", "E_y", "E_z", "E_theta"});
}

MetricFunction metric(double gamma) {
  return [gamma](std::span<const Dual2> c) {
    const Dual2 &x = c[1], &y = c[2];
    const Dual2 o(0.0), l(1.0), h(0.5);
    const Dual2 qt(gamma / 2), xt = -0.5 * y, yt = 0.5 * x;
    return std::vector<Dual2>{
        l,  o,  o,  o, qt,
        o,  l,  o,  o, xt,
        o,  o,  l,  o, yt,
        o,  o,  o,  o, h,
        qt, xt, yt, h, o};
  };
}

InvariantMetricModel model(double gamma) { return {algebra(), symmetry(), metric(gamma)}; }

Matrix inertia() {
  return Matrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0.5}, {0, 0, 0.5, 0}});
}

Matrix group_element(double x, double y, double z, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return Matrix::from_rows({{1, y * c + x * s, -y * s + x * c, z},
                            {0, c, -s, x},
                            {0, s, c, -y},
                            {0, 0, 0, 1}});
}

std::vector<Matrix> basis_matrices() {
  std::vector<Matrix> out(4, Matrix(4, 4));
  out[0](0, 2) = 1;  // e_x = e13 + e24
  out[0](1, 3) = 1;
  out[1](0, 1) = 1;  // e_y = e12 - e34
  out[1](2, 3) = -1;
  out[2](0, 3) = 1;  // e_z = e14
  out[3](1, 2) = -1;  // e_theta = -e23 + e32
  out[3](2, 1) = 1;
  return out;
}

std::vector<double> coadjoint(const Matrix& g, std::span<const double> mu) {
  if (mu.size() != 4) throw IndexError("A410 covector has length 4");
  const auto basis = basis_matrices();
  const Matrix ginv = inverse(g);
  // Coordinates of a matrix in the basis via the Frobenius Gram system.
  Matrix gram(4, 4);
  auto frob = [](const Matrix& a, const Matrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
    return s;
  };
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) gram(a, b) = frob(basis[a], basis[b]);
  const LuFactor lu(gram);
  std::vector<double> nu(4, 0.0);
  for (std::size_t b = 0; b < 4; ++b) {
    const Matrix ad = g * basis[b] * ginv;
    std::vector<double> rhs(4);
    for (std::size_t a = 0; a < 4; ++a) rhs[a] = frob(basis[a], ad);
    const auto coord = lu.solve(rhs);
    for (std::size_t a = 0; a < 4; ++a) nu[b] += mu[a] * coord[a];
  }
  return nu;
}

}  // namespace a410

}  // namespace routhk
