#include "routhk/examples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "routhk/errors.hpp"
#include "routhk/expression.hpp"
#include "routhk/io.hpp"
#include "routhk/reconstruction.hpp"
#include "routhk/symmetry.hpp"

namespace routhk {

namespace detail {
const std::map<std::string, std::string>& builtin_descriptors();
}

using nlohmann::json;

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::SolvesEL: return "solves-EL";
    case Certificate::SolvesReduced: return "solves-reduced";
    case Certificate::Inconsistent: return "inconsistent";
    case Certificate::NonReconstructible: return "non-reconstructible";
  }
  return "";
}

Certificate certificate_from_string(const std::string& s) {
  for (Certificate c : {Certificate::SolvesEL, Certificate::SolvesReduced, Certificate::Inconsistent,
                        Certificate::NonReconstructible})
    if (to_string(c) == s) return c;
  throw ParseError("unknown certificate '" + s + "'");
}

bool ExampleCase::abelian() const {
  const auto& c = symmetry.structure();
  const std::size_t m = c.dim();
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (c(g, a, b) != 0.0) return false;
  return true;
}

const AnalyticSolution& ExampleCase::solution(const std::string& label) const {
  for (const auto& s : solutions)
    if (s.label == label) return s;
  std::string known;
  for (const auto& s : solutions) known += (known.empty() ? "" : ", ") + s.label;
  throw InvalidParameters("example '" + name + "' has no solution '" + label + "' (known: " + known +
                          ")");
}

RouthReduction ExampleCase::reduction(const MomentumValue& mu) const {
  if (!chart) throw InvalidParameters("example '" + name + "' defines no reduction");
  if (mu.rows() != symmetry.m() || mu.cols() != k()) {
    std::ostringstream msg;
    msg << "momentum must be " << symmetry.m() << " x " << k();
    throw InvalidParameters(msg.str());
  }
  return RouthReduction(lagrangian, symmetry, connection, mu, *chart, name);
}

std::vector<std::string> example_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::builtin_descriptors()) out.push_back(name);
  return out;
}

const std::string& example_descriptor(const std::string& name) {
  const auto& table = detail::builtin_descriptors();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& [n, t] : table) known += (known.empty() ? "" : ", ") + n;
    throw UnknownExample("unknown example '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("system descriptor: ") + e.what());
  }
}

std::string expr_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_shortest(v.get<double>());
  throw ParseError("expected an expression string or a number, got " + v.dump());
}

// Dual-capable evaluation of a list of compiled expressions.
std::function<std::vector<Dual2>(std::span<const Dual2>)> vector_function(
    std::vector<CompiledExpression> exprs) {
  return [exprs = std::move(exprs)](std::span<const Dual2> x) {
    std::vector<Dual2> out;
    out.reserve(exprs.size());
    for (const auto& e : exprs) out.push_back(e.is_constant() ? Dual2(e.constant_value()) : e(x));
    return out;
  };
}

struct Term {
  std::size_t i = 0, a = 0, j = 0, b = 0;
  CompiledExpression coef;
};

Dual2 coefficient(const CompiledExpression& c, std::span<const Dual2> q) {
  return c.is_constant() ? Dual2(c.constant_value()) : c(q);
}

void check_constraint(const json& c, const std::map<std::string, double>& params,
                      const std::string& example) {
  const std::string text = c.at("expr").get<std::string>();
  const std::string rule = c.value("rule", "nonzero");
  const std::string message = c.value("message", text + " violates rule " + rule);
  const double v = evaluate_constant(text, params);
  bool ok = std::isfinite(v);
  if (rule == "nonzero") {
    ok = ok && std::abs(v) > 1e-12;
  } else if (rule == "positive") {
    ok = ok && v > 1e-12;
  } else if (rule == "integer") {
    ok = ok && v == std::round(v);
    if (c.contains("min")) ok = ok && v >= c.at("min").get<double>();
    if (c.contains("max")) ok = ok && v <= c.at("max").get<double>();
  } else {
    throw ParseError("unknown constraint rule '" + rule + "'");
  }
  if (!ok) {
    std::ostringstream msg;
    msg << example << ": " << message << " (" << text << " = " << v << ")";
    throw InvalidParameters(msg.str());
  }
}

std::size_t index_at(const json& e, std::size_t pos, std::size_t bound, const char* what) {
  const auto v = e.at(pos).get<long>();
  if (v < 0 || static_cast<std::size_t>(v) >= bound)
    throw ParseError(std::string(what) + " index out of range in " + e.dump());
  return static_cast<std::size_t>(v);
}

AnalyticField analytic_field(const json& comps, std::size_t n, std::size_t k,
                             const std::map<std::string, double>& constants,
                             const std::vector<std::string>& independents, const std::string& where) {
  if (!comps.is_array() || comps.size() != n) {
    std::ostringstream msg;
    msg << where << ": expected " << n << " components";
    throw ParseError(msg.str());
  }
  std::vector<CompiledExpression> exprs;
  for (const auto& c : comps) exprs.push_back(Expression::parse(expr_text(c)).compile(constants, independents));
  return AnalyticField{n, k, vector_function(std::move(exprs))};
}

}  // namespace

std::vector<ParameterSpec> descriptor_parameters(const std::string& json_text) {
  const json j = parse_json(json_text);
  std::vector<ParameterSpec> out;
  if (!j.contains("parameters")) return out;
  try {
    for (const auto& p : j.at("parameters"))
      out.push_back({p.at("name").get<std::string>(), p.at("default").get<double>(),
                     p.value("description", "")});
  } catch (const json::exception& e) {
    throw ParseError(std::string("parameters: ") + e.what());
  }
  return out;
}

ExampleCase load_system(const std::string& json_text, const std::map<std::string, double>& overrides,
                        const std::optional<MomentumValue>& mu_override) {
  const json j = parse_json(json_text);
  try {
    const std::string name = j.value("name", "system");

    std::map<std::string, double> params;
    for (const auto& p : descriptor_parameters(json_text)) params[p.name] = p.default_value;
    for (const auto& [key, value] : overrides) {
      if (!params.count(key)) throw InvalidParameters(name + ": unknown parameter '" + key + "'");
      if (!std::isfinite(value)) throw InvalidParameters(name + ": parameter '" + key + "' is not finite");
      params[key] = value;
    }
    if (j.contains("constraints"))
      for (const auto& c : j.at("constraints")) check_constraint(c, params, name);

    const double kv = evaluate_constant(expr_text(j.at("k")), params);
    if (!(kv >= 1 && kv == std::round(kv))) throw InvalidParameters(name + ": k must be a positive integer");
    const auto k = static_cast<std::size_t>(kv);

    const auto coords = j.at("coordinates").get<std::vector<std::string>>();
    const std::size_t n = coords.size();
    if (n == 0) throw ParseError(name + ": no coordinates");
    std::vector<std::string> indep;
    if (j.contains("independents")) {
      indep = j.at("independents").get<std::vector<std::string>>();
      if (indep.size() != k) throw ParseError(name + ": one independent variable name per parameter direction");
    } else {
      for (std::size_t a = 0; a < k; ++a) indep.push_back("t" + std::to_string(a + 1));
    }
    auto compile_q = [&](const json& v) { return Expression::parse(expr_text(v)).compile(params, coords); };

    // Lagrangian.
    const json& lj = j.at("lagrangian");
    std::vector<Term> monomials, metric_terms, linear;
    if (lj.contains("monomials"))
      for (const auto& e : lj.at("monomials"))
        monomials.push_back({index_at(e, 0, n, "coordinate"), index_at(e, 1, k, "parameter"),
                             index_at(e, 2, n, "coordinate"), index_at(e, 3, k, "parameter"),
                             compile_q(e.at(4))});
    if (lj.contains("metric"))
      for (const auto& e : lj.at("metric"))
        metric_terms.push_back({index_at(e, 0, n, "coordinate"), 0, index_at(e, 1, n, "coordinate"), 0,
                                compile_q(e.at(2))});
    if (lj.contains("linear"))
      for (const auto& e : lj.at("linear"))
        linear.push_back({index_at(e, 0, n, "coordinate"), index_at(e, 1, k, "parameter"), 0, 0,
                          compile_q(e.at(2))});
    std::vector<double> eta(k, 1.0);
    if (lj.contains("signature")) {
      const json& s = lj.at("signature");
      if (s.is_string() && s.get<std::string>() == "minkowski") {
        eta[0] = -1.0;
      } else if (s.is_array() && s.size() == k) {
        for (std::size_t a = 0; a < k; ++a) eta[a] = s[a].get<double>();
      } else {
        throw ParseError(name + ": signature must be \"minkowski\" or k numbers");
      }
    }
    std::optional<CompiledExpression> potential;
    if (lj.contains("potential")) potential = compile_q(lj.at("potential"));

    JetFunction lfun = [n, k, monomials, metric_terms, linear, eta, potential](
                           std::span<const Dual2> q, std::span<const Dual2> v) {
      Dual2 l(0.0);
      for (const auto& t : monomials) l += coefficient(t.coef, q) * v[t.i + n * t.a] * v[t.j + n * t.b];
      for (const auto& t : metric_terms) {
        const Dual2 g = coefficient(t.coef, q) * (t.i == t.j ? 0.5 : 1.0);
        Dual2 s(0.0);
        for (std::size_t a = 0; a < k; ++a) s += eta[a] * v[t.i + n * a] * v[t.j + n * a];
        l += g * s;
      }
      for (const auto& t : linear) l += coefficient(t.coef, q) * v[t.i + n * t.a];
      if (potential) l -= coefficient(*potential, q);
      return l;
    };
    LagrangianSystem lag(n, k, lfun, name);

    std::optional<MetricFunction> metric;
    if (!metric_terms.empty()) {
      metric = [n, metric_terms](std::span<const Dual2> q) {
        std::vector<Dual2> g(n * n, Dual2(0.0));
        for (const auto& t : metric_terms) {
          const Dual2 c = coefficient(t.coef, q);
          g[t.i * n + t.j] = c;
          g[t.j * n + t.i] = c;
        }
        return g;
      };
    }

    // Symmetry.
    const json& sj = j.at("symmetry");
    const json& gens = sj.at("generators");
    const std::size_t m = gens.size();
    if (m == 0) throw ParseError(name + ": no generators");
    StructureConstants sc(m);
    if (sj.contains("structure"))
      for (const auto& e : sj.at("structure"))
        sc.set(index_at(e, 2, m, "algebra"), index_at(e, 0, m, "algebra"), index_at(e, 1, m, "algebra"),
               e.at(3).get<double>());
    if (sc.jacobi_residual() > 1e-12) throw InvalidParameters(name + ": structure constants violate Jacobi");
    std::vector<CompiledExpression> gen_exprs;
    for (const auto& row : gens) {
      if (row.size() != n) throw ParseError(name + ": each generator needs one component per coordinate");
      for (const auto& c : row) gen_exprs.push_back(compile_q(c));
    }
    std::vector<std::string> labels = sj.value("labels", std::vector<std::string>{});
    if (labels.empty())
      for (std::size_t b = 0; b < m; ++b) labels.push_back("e" + std::to_string(b + 1));
    SymmetryModel sym(n, sc, vector_function(gen_exprs), labels);

    std::optional<InvariantMetricModel> metric_model;
    if (metric) metric_model = InvariantMetricModel{LieAlgebraModel{sc, labels}, sym, *metric};

    // Connection.
    const json& cj = j.at("connection");
    std::optional<ConnectionOneForm> conn;
    if (cj.is_string()) {
      if (cj.get<std::string>() != "mechanical") throw ParseError(name + ": unknown connection type");
      if (!metric_model) throw ParseError(name + ": mechanical connection needs a metric Lagrangian");
      conn = mechanical_connection_form(*metric_model);
    } else {
      const json& comps = cj.at("components");
      if (comps.size() != m) throw ParseError(name + ": one connection row per generator");
      std::vector<CompiledExpression> ce;
      for (const auto& row : comps) {
        if (row.size() != n) throw ParseError(name + ": connection rows need one entry per coordinate");
        for (const auto& c : row) ce.push_back(compile_q(c));
      }
      conn = ConnectionOneForm(m, n, vector_function(ce));
    }

    // Reduction chart.
    std::optional<BundleChart> chart;
    if (j.contains("reduction")) {
      const json& rj = j.at("reduction");
      BundleChart ch;
      ch.n = n;
      for (const auto& b : rj.at("base")) {
        const auto idx = b.get<long>();
        if (idx < 0 || static_cast<std::size_t>(idx) >= n) throw ParseError(name + ": base index out of range");
        ch.base.push_back(static_cast<std::size_t>(idx));
      }
      ch.fibre_point = rj.value("fibre_point", std::vector<double>(n, 0.0));
      if (ch.fibre_point.size() != n) throw ParseError(name + ": fibre_point needs n entries");
      chart = ch;
    }

    // Momentum.
    MomentumValue mu(m, k);
    if (mu_override) {
      if (mu_override->rows() != m || mu_override->cols() != k) {
        std::ostringstream msg;
        msg << name << ": momentum must have " << m * k << " entries (" << m << " x " << k << ")";
        throw InvalidParameters(msg.str());
      }
      mu = *mu_override;
    } else if (j.contains("mu")) {
      const json& mj = j.at("mu");
      if (mj.size() != m) throw ParseError(name + ": one momentum row per generator");
      for (std::size_t b = 0; b < m; ++b) {
        const json& row = mj[b];
        if (row.size() > k) throw ParseError(name + ": momentum row longer than k");
        for (std::size_t a = 0; a < k; ++a) {
          const json& e = row.size() == 1 ? row[0] : (a < row.size() ? row[a] : json("0"));
          mu(b, a) = evaluate_constant(expr_text(e), params);
        }
      }
    }
    for (double v : mu.data())
      if (!std::isfinite(v)) throw InvalidParameters(name + ": momentum is not finite");

    // Solutions.
    std::map<std::string, double> constants = params;
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t a = 0; a < k; ++a) {
        constants["mu" + std::to_string(b + 1) + "_" + std::to_string(a + 1)] = mu(b, a);
        if (m == 1) constants["mu" + std::to_string(a + 1)] = mu(b, a);
      }
    std::vector<AnalyticSolution> sols;
    if (j.contains("solutions"))
      for (const auto& s : j.at("solutions")) {
        AnalyticSolution sol;
        sol.label = s.at("label").get<std::string>();
        const std::string where = name + "/" + sol.label;
        const std::string space = s.value("space", "full");
        if (space != "full" && space != "reduced") throw ParseError(where + ": space must be full or reduced");
        sol.reduced = space == "reduced";
        if (sol.reduced && !chart) throw ParseError(where + ": reduced solution without a reduction");
        const std::size_t dim = sol.reduced ? chart->base.size() : n;
        sol.field = analytic_field(s.at("components"), dim, k, constants, indep, where);
        sol.expected = certificate_from_string(s.at("expected").get<std::string>());
        if (s.contains("reconstruction"))
          sol.reconstruction = analytic_field(s.at("reconstruction"), n, k, constants, indep, where);
        if (s.contains("momentum"))
          for (const auto& e : s.at("momentum")) {
            MomentumProfile p;
            p.beta = index_at(e, 0, m, "algebra");
            p.a = index_at(e, 1, k, "parameter");
            p.text = expr_text(e.at(2));
            auto ce = Expression::parse(p.text).compile(constants, indep);
            p.value = [ce](std::span<const double> t) { return ce(t); };
            sol.momentum.push_back(std::move(p));
          }
        sol.zero_magnetic = s.value("zero_magnetic", false);
        sols.push_back(std::move(sol));
      }

    return ExampleCase{name,        j.value("description", ""), params, coords, indep, std::move(lag),
                       std::move(sym), std::move(*conn),        mu,     chart,  metric_model,
                       std::move(sols)};
  } catch (const json::exception& e) {
    throw ParseError(std::string("system descriptor: ") + e.what());
  }
}

ExampleCase load_example(const std::string& name, const std::map<std::string, double>& params,
                         const std::optional<MomentumValue>& mu) {
  return load_system(example_descriptor(name), params, mu);
}

bool CertificateReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed; });
}

const CertificateEntry* CertificateReport::find(const std::string& solution,
                                                const std::string& check) const {
  for (const auto& e : entries)
    if (e.solution == solution && e.check == check) return &e;
  return nullptr;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void CertificateReport::write_csv(std::ostream& os) const {
  os << "solution,check,max_residual,expected,passed\n";
  for (const auto& e : entries)
    os << csv_field(e.solution) << ',' << csv_field(e.check) << ',' << format_shortest(e.max_residual) << ','
       << csv_field(e.expected) << ',' << (e.passed ? "true" : "false") << '\n';
}

bool vanishes_on_grid(double coarse, double fine, double tol) {
  if (coarse <= tol) return true;
  if (!(fine > 0.0)) return false;
  const double ratio = coarse / fine;
  return ratio >= 3.5 && ratio <= 4.5;
}

MultiIndex origin_node(const Grid& grid) {
  const std::vector<double> zero(grid.dim(), 0.0);
  return grid.unflatten(grid.nearest(zero));
}

FieldSample reconstruct_solution(const ExampleCase& c, const AnalyticSolution& s, const Grid& grid,
                                 const MomentumValue& mu, std::optional<std::vector<double>> anchor_value) {
  if (!s.reduced) throw InvalidParameters("solution '" + s.label + "' is not a reduced solution");
  const RouthReduction red = c.reduction(mu);
  const MomentumConstraints cons = level_set_constraints(red);
  const FieldSample field = FieldSample::sample(grid, s.field);
  ReconstructionOptions opt;
  opt.chart = red.chart();
  opt.anchor = origin_node(grid);
  const auto fibre = red.chart().fibre();
  std::vector<double> anchor(fibre.size(), 0.0);
  if (anchor_value) {
    if (anchor_value->size() != fibre.size()) {
      std::ostringstream msg;
      msg << "anchor needs " << fibre.size() << " value(s), one per group coordinate";
      throw InvalidParameters(msg.str());
    }
    anchor = *anchor_value;
  } else if (s.reconstruction) {
    const auto full = s.reconstruction->value(grid.point(*opt.anchor));
    for (std::size_t r = 0; r < fibre.size(); ++r) anchor[r] = full[fibre[r]];
  }
  return reconstruct_abelian(cons, field, anchor, opt);
}

namespace {

std::string le(double tol) { return "<= " + format_shortest(tol); }
std::string gt(double tol) { return "> " + format_shortest(tol); }


double closed_form_gap(const FieldSample& f, const AnalyticField& closed) {
  const Grid& g = f.grid();
  double gap = 0.0;
  for (std::size_t node = 0; node < g.size(); ++node) {
    const auto exact = closed.value(g.point(node));
    const auto got = f.at(node);
    for (std::size_t i = 0; i < f.n(); ++i) gap = std::max(gap, std::abs(exact[i] - got[i]));
  }
  return gap;
}

void certify(const ExampleCase& c, const AnalyticSolution& s, const Grid& grid,
             const CertificateOptions& opt, const MomentumValue& mu,
             std::optional<RouthSystem>& rsys, CertificateReport& rep) {
  const double tol = opt.tol;
  auto add = [&](const std::string& check, double value, const std::string& expected, bool passed) {
    rep.entries.push_back({s.label, check, value, expected, passed});
  };
  const FieldSample field = FieldSample::sample(grid, s.field);
  const std::size_t m = c.symmetry.m(), k = c.k();

  if (!s.reduced) {
    const double el = el_residual(c.lagrangian, field).max_abs();
    add("el_residual", el, le(tol), el <= tol);
    const double nd = noether_divergence(c.lagrangian, c.symmetry, field).max_abs();
    add("noether_divergence", nd, le(tol), nd <= tol);
    const NodalReport mf = momentum_field(c.lagrangian, c.symmetry, field);
    for (const auto& p : s.momentum) {
      double gap = 0.0;
      for (std::size_t node = 0; node < grid.size(); ++node)
        gap = std::max(gap, std::abs(mf.values[node * m * k + p.beta + m * p.a] - p.value(grid.point(node))));
      add("momentum_profile_" + std::to_string(p.beta + 1) + "_" + std::to_string(p.a + 1), gap, le(tol),
          gap <= tol);
    }
    if (s.expected == Certificate::NonReconstructible) {
      const std::size_t o = grid.flatten(origin_node(grid));
      MomentumValue at_origin(m, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < m; ++b) at_origin(b, a) = mf.values[o * m * k + b + m * a];
      const double dev = momentum_constancy(c.lagrangian, c.symmetry, field, at_origin).max();
      add("momentum_constancy", dev, gt(tol), dev > tol);
    }
    return;
  }

  if (!rsys) rsys = RouthSystem::from_reduction(c.reduction(mu));
  const double rr = reduced_el_residual(*rsys, field).max_abs();
  add("reduced_residual", rr, le(tol), rr <= tol);
  if (s.zero_magnetic) {
    double bmax = 0.0;
    for (std::size_t node = 0; node < grid.size(); ++node)
      for (std::size_t a = 0; a < k; ++a) bmax = std::max(bmax, rsys->magnetic(field.at(node), a).max_abs());
    add("magnetic_term", bmax, le(tol), bmax <= tol);
  }
  if (s.expected == Certificate::SolvesReduced && !c.abelian()) return;
  if (!c.abelian()) {
    add("consistency", std::numeric_limits<double>::quiet_NaN(), "abelian symmetry required", false);
    return;
  }
  const RouthReduction red = c.reduction(mu);
  const MomentumConstraints cons = level_set_constraints(red);
  const ConsistencyReport cr = consistency_check(cons, field);
  if (s.expected == Certificate::Inconsistent) {
    add("consistency", cr.gap, gt(cr.tolerance), !cr.consistent());
    return;
  }
  add("consistency", cr.gap, le(cr.tolerance), cr.consistent());
  if (!cr.consistent()) return;

  const Grid fine = grid.refined();
  const FieldSample full = reconstruct_solution(c, s, grid, mu);
  const FieldSample full_fine = reconstruct_solution(c, s, fine, mu);
  const std::string grid_expected = le(opt.grid_tol) + " or O(h^2)";
  if (s.reconstruction) {
    const double e1 = closed_form_gap(full, *s.reconstruction);
    const double e2 = closed_form_gap(full_fine, *s.reconstruction);
    add("reconstruction_error", e1, grid_expected, vanishes_on_grid(e1, e2, opt.grid_tol));
  }
  const double r1 = el_residual(c.lagrangian, full, DerivativeMode::Stencil).max_abs();
  const double r2 = el_residual(c.lagrangian, full_fine, DerivativeMode::Stencil).max_abs();
  add("reconstruction_el_residual", r1, grid_expected, vanishes_on_grid(r1, r2, opt.grid_tol));
  const double m1 = momentum_constancy(c.lagrangian, c.symmetry, full, mu).max();
  const double m2 = momentum_constancy(c.lagrangian, c.symmetry, full_fine, mu).max();
  add("reconstruction_momentum", m1, grid_expected, vanishes_on_grid(m1, m2, opt.grid_tol));
}

}  // namespace

CertificateReport run_certificates(const ExampleCase& c, const Grid& grid, const CertificateOptions& options) {
  if (grid.dim() != c.k()) throw GridError("grid dimension differs from the number of independent variables");
  const MomentumValue mu = options.mu.value_or(c.default_mu);
  CertificateReport rep;
  std::optional<RouthSystem> rsys;
  for (const auto& s : c.solutions) {
    try {
      certify(c, s, grid, options, mu, rsys, rep);
    } catch (const Error& e) {
      rep.entries.push_back({s.label, "error", std::numeric_limits<double>::quiet_NaN(), e.what(), false});
    }
  }
  return rep;
}

}  // namespace routhk
