#include "routhk/differentiate.hpp"

#include <cmath>
#include <sstream>

#include "routhk/errors.hpp"

namespace routhk {

void require_finite(const Dual2& d, std::span<const double> at, const char* what) {
  if (d.is_finite()) return;
  std::ostringstream msg;
  msg << what << ": non-finite result at (";
  for (std::size_t i = 0; i < at.size(); ++i) msg << (i ? ", " : "") << at[i];
  msg << ")";
  throw NumericalFailure(msg.str());
}

DirectionalDerivatives directional_derivs(const ScalarFunction& f, std::span<const double> x,
                                          std::span<const std::vector<double>> dirs) {
  const std::size_t nd = dirs.size();
  std::vector<Dual2> args;
  args.reserve(x.size());
  std::vector<double> seed(nd);
  for (std::size_t c = 0; c < x.size(); ++c) {
    for (std::size_t d = 0; d < nd; ++d) {
      if (dirs[d].size() != x.size()) throw IndexError("direction has wrong length");
      seed[d] = dirs[d][c];
    }
    args.push_back(Dual2::seeded(x[c], seed));
  }
  const Dual2 r = f(args);
  require_finite(r, x, "directional_derivs");
  DirectionalDerivatives out;
  out.value = r.value();
  out.first.resize(nd);
  out.second = Matrix(nd, nd);
  for (std::size_t i = 0; i < nd; ++i) {
    out.first[i] = r.d1(i);
    for (std::size_t j = 0; j < nd; ++j) out.second(i, j) = r.d2(i, j);
  }
  return out;
}

Taylor2 expand(const ScalarFunction& f, std::span<const double> x) {
  const Dual2 r = f(make_variables(x));
  require_finite(r, x, "expand");
  Taylor2 t;
  t.value = r.value();
  const std::size_t n = x.size();
  t.gradient.resize(n);
  t.hessian = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t.gradient[i] = r.d1(i);
    for (std::size_t j = 0; j < n; ++j) t.hessian(i, j) = r.d2(i, j);
  }
  return t;
}

double evaluate(const ScalarFunction& f, std::span<const double> x) {
  const Dual2 r = f(make_constants(x));
  require_finite(r, x, "evaluate");
  return r.value();
}

RealFunction as_real(ScalarFunction f) {
  return [f = std::move(f)](std::span<const double> x) { return evaluate(f, x); };
}

std::vector<double> fd_gradient(const RealFunction& f, std::span<const double> x, double h) {
  std::vector<double> g(x.size());
  std::vector<double> xp(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = xp[i];
    xp[i] = xi + h;
    const double fp = f(xp);
    xp[i] = xi - h;
    const double fm = f(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace routhk
