#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "routhk/errors.hpp"
#include "routhk/examples.hpp"
#include "routhk/io.hpp"
#include "routhk/reconstruction.hpp"
#include "routhk/routh.hpp"

using namespace routhk;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInvalid = 2, kIo = 3, kInconsistent = 4 };

struct IoError : Error {
  using Error::Error;
};

struct Common {
  std::string example;
  std::string system;
  std::map<std::string, double> named;
  std::vector<std::string> params;
  std::vector<double> mu;
  std::size_t grid = 21;
  std::vector<double> domain{-1.0, 1.0};
  std::optional<double> tol;
  std::string output;
};

std::set<std::string> known_parameter_names() {
  std::set<std::string> names;
  for (const auto& e : example_names())
    for (const auto& p : descriptor_parameters(example_descriptor(e))) names.insert(p.name);
  return names;
}

void add_common(CLI::App* cmd, Common& c, const std::set<std::string>& pnames, bool with_grid) {
  auto* src = cmd->add_option("--example", c.example, "built-in example name");
  auto* sys = cmd->add_option("--system", c.system, "JSON system descriptor file");
  src->excludes(sys);
  for (const auto& p : pnames)
    cmd->add_option_function<double>("--" + p, [&c, p](double v) { c.named[p] = v; },
                                     "example parameter " + p);
  cmd->add_option("--param", c.params, "parameter override name=value (repeatable)");
  cmd->add_option("--mu", c.mu, "momentum values, row by row (m rows of k entries)");
  if (with_grid) {
    cmd->add_option("--grid", c.grid, "nodes per axis")->check(CLI::Range(3, 100000));
    cmd->add_option("--domain", c.domain, "lower and upper bound of every axis")->expected(2);
  }
  cmd->add_option("--tol", c.tol, "acceptance tolerance");
  cmd->add_option("--output", c.output, "output file");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExampleCase load(const Common& c) {
  std::map<std::string, double> params = c.named;
  for (const auto& kv : c.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidParameters("--param expects name=value, got '" + kv + "'");
    try {
      std::size_t used = 0;
      const std::string value = kv.substr(eq + 1);
      params[kv.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw InvalidParameters("--param value is not a number: '" + kv + "'");
    }
  }
  if (c.example.empty() && c.system.empty()) throw InvalidParameters("one of --example or --system is required");
  const std::string text = c.system.empty() ? example_descriptor(c.example) : read_file(c.system);
  ExampleCase ex = load_system(text, params);
  if (!c.mu.empty()) {
    const std::size_t m = ex.symmetry.m(), k = ex.k();
    if (c.mu.size() != m * k) {
      std::ostringstream msg;
      msg << "--mu needs " << m * k << " values (" << m << " x " << k << "), got " << c.mu.size();
      throw InvalidParameters(msg.str());
    }
    MomentumValue mu(m, k);
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t a = 0; a < k; ++a) mu(b, a) = c.mu[b * k + a];
    ex = load_system(text, params, mu);
  }
  return ex;
}

Grid make_grid(const Common& c, std::size_t k) {
  return Grid::cube(k, c.domain[0], c.domain[1], c.grid);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

int cmd_check(const Common& c) {
  const ExampleCase ex = load(c);
  const Grid grid = make_grid(c, ex.k());
  CertificateOptions opt;
  if (c.tol) opt.tol = *c.tol;
  const CertificateReport rep = run_certificates(ex, grid, opt);
  const std::string path = c.output.empty() ? "report.csv" : c.output;
  {
    auto out = open_output(path);
    rep.write_csv(out);
    if (!out) throw IoError("failed writing '" + path + "'");
  }
  std::size_t failed = 0;
  for (const auto& e : rep.entries) {
    std::cout << (e.passed ? "pass " : "FAIL ") << e.solution << " " << e.check << " "
              << format_shortest(e.max_residual) << " (" << e.expected << ")\n";
    failed += e.passed ? 0 : 1;
  }
  std::cout << ex.name << ": " << rep.entries.size() - failed << "/" << rep.entries.size()
            << " checks passed; report written to " << path << "\n";
  return failed ? kFailed : kOk;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t col = 0; col < m.cols(); ++col) row.push_back(m(r, col));
    rows.push_back(row);
  }
  return rows;
}

int cmd_reduce(const Common& c, const std::vector<double>& base_override) {
  const ExampleCase ex = load(c);
  const RouthReduction red = ex.reduction(ex.default_mu);
  const RouthSystem rsys = RouthSystem::from_reduction(red);
  const std::size_t bn = red.base_n(), k = ex.k();
  std::vector<double> base = red.chart().project(red.chart().fibre_point);
  if (!base_override.empty()) {
    if (base_override.size() != bn) throw InvalidParameters("--base needs one value per reduced coordinate");
    base = base_override;
  }
  // Probe jets around the base point for configuration and velocity dependence.
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<KJet> probes;
  for (int p = 0; p < 6; ++p) {
    KJet j(bn, k);
    for (std::size_t r = 0; r < bn; ++r) j.q[r] = base[r] + 0.25 * u(rng);
    for (auto& v : j.v) v = u(rng);
    probes.push_back(j);
  }
  double variation = 0.0;
  const QuadraticRouthian q = rsys.quadratic_coefficients(base, probes, &variation);
  const double tol = c.tol.value_or(1e-10);

  nlohmann::json out;
  out["example"] = ex.name;
  out["parameters"] = ex.parameters;
  out["mu"] = matrix_json(ex.default_mu);
  out["base_point"] = base;
  std::vector<std::string> base_names;
  for (std::size_t r : red.chart().base) base_names.push_back(ex.coordinates[r]);
  out["base_coordinates"] = base_names;
  out["quadratic"] = matrix_json(q.quadratic);
  out["linear"] = q.linear;
  out["constant"] = q.constant;
  // Monomial coefficients of R = sum c v v + sum l v + const, velocity v^r_a
  // named by base coordinate r and parameter direction a (1-based).
  auto vname = [&](std::size_t idx) {
    return "v^" + base_names[idx % bn] + "_" + std::to_string(idx / bn + 1);
  };
  nlohmann::json mono = nlohmann::json::array();
  const std::size_t nk = bn * k;
  for (std::size_t i = 0; i < nk; ++i)
    for (std::size_t j = i; j < nk; ++j) {
      const double coef = i == j ? 0.5 * q.quadratic(i, i) : q.quadratic(i, j) + q.quadratic(j, i);
      if (coef != 0.0) mono.push_back({{"term", i == j ? vname(i) + "^2" : vname(i) + "*" + vname(j)}, {"coefficient", coef}});
    }
  for (std::size_t i = 0; i < nk; ++i)
    if (q.linear[i] != 0.0) mono.push_back({{"term", vname(i)}, {"coefficient", q.linear[i]}});
  if (q.constant != 0.0) mono.push_back({{"term", "1"}, {"coefficient", q.constant}});
  out["monomials"] = mono;
  nlohmann::json mag = nlohmann::json::array();
  for (std::size_t a = 0; a < k; ++a) mag.push_back(matrix_json(rsys.magnetic(base, a)));
  out["magnetic"] = mag;
  out["max_variation"] = variation;
  out["quadratic_and_cyclic"] = variation <= tol;

  // 17 significant digits for reals.
  std::ostringstream text;
  std::function<void(const nlohmann::json&, int)> emit = [&](const nlohmann::json& v, int indent) {
    const std::string pad(indent, ' ');
    if (v.is_object()) {
      text << "{\n";
      std::size_t i = 0;
      for (auto it = v.begin(); it != v.end(); ++it, ++i) {
        text << pad << "  " << nlohmann::json(it.key()).dump() << ": ";
        emit(it.value(), indent + 2);
        text << (i + 1 < v.size() ? ",\n" : "\n");
      }
      text << pad << "}";
    } else if (v.is_array()) {
      text << "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) text << ", ";
        emit(v[i], indent);
      }
      text << "]";
    } else if (v.is_number_float()) {
      text << format_17(v.get<double>());
    } else {
      text << v.dump();
    }
  };
  emit(out, 0);
  text << "\n";
  if (c.output.empty()) {
    std::cout << text.str();
  } else {
    auto f = open_output(c.output);
    f << text.str();
    if (!f) throw IoError("failed writing '" + c.output + "'");
  }
  return kOk;
}

int cmd_reconstruct(const Common& c, const std::string& label, const std::vector<double>& anchor) {
  const ExampleCase ex = load(c);
  const AnalyticSolution& s = ex.solution(label);
  if (!s.reduced) throw InvalidParameters("solution '" + label + "' is not a reduced solution");
  if (!ex.abelian()) throw InvalidParameters("reconstruction by quadrature needs an abelian symmetry");
  const Grid grid = make_grid(c, ex.k());
  const std::optional<std::vector<double>> anchor_value =
      anchor.empty() ? std::nullopt : std::optional<std::vector<double>>(anchor);
  const FieldSample full = reconstruct_solution(ex, s, grid, ex.default_mu, anchor_value);
  const FieldSample full_fine = reconstruct_solution(ex, s, grid.refined(), ex.default_mu, anchor_value);
  const std::string path = c.output.empty() ? "reconstruction.csv" : c.output;
  {
    auto out = open_output(path);
    write_csv(out, full);
  }
  const double tol = c.tol.value_or(1e-6);
  const double r1 = el_residual(ex.lagrangian, full, DerivativeMode::Stencil).max_abs();
  const double r2 = el_residual(ex.lagrangian, full_fine, DerivativeMode::Stencil).max_abs();
  const bool ok = vanishes_on_grid(r1, r2, tol);
  std::cout << "reconstructed " << ex.name << "/" << label << " written to " << path << "\n"
            << "full EL residual " << format_shortest(r1) << " (refined grid " << format_shortest(r2)
            << ", tolerance " << format_shortest(tol) << " or second-order decay): "
            << (ok ? "pass" : "FAIL") << "\n";
  return ok ? kOk : kFailed;
}

int cmd_list() {
  for (const auto& name : example_names()) {
    const ExampleCase ex = load_example(name);
    std::cout << name << ": " << ex.description << "\n  parameters:";
    for (const auto& p : descriptor_parameters(example_descriptor(name)))
      std::cout << " " << p.name << "=" << format_shortest(p.default_value);
    std::cout << "\n  solutions:";
    for (const auto& s : ex.solutions)
      std::cout << " " << s.label << " (" << (s.reduced ? "reduced, " : "") << to_string(s.expected) << ")";
    std::cout << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("ROUTHK_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 0) set_thread_limit(static_cast<std::size_t>(n));
  }

  CLI::App app{"Verification, Routh reduction and reconstruction for k-symplectic field theories"};
  app.require_subcommand(1);
  const auto pnames = known_parameter_names();

  Common check_opts, reduce_opts, recon_opts;
  auto* check = app.add_subcommand("check", "run the certificate report of an example");
  add_common(check, check_opts, pnames, true);
  auto* reduce = app.add_subcommand("reduce", "print the reduced Routhian as JSON");
  add_common(reduce, reduce_opts, pnames, false);
  std::vector<double> base;
  reduce->add_option("--base", base, "reduced base point");
  auto* recon = app.add_subcommand("reconstruct", "lift a reduced solution and write the full field as CSV");
  add_common(recon, recon_opts, pnames, true);
  std::string solution;
  std::vector<double> anchor;
  recon->add_option("--solution", solution, "reduced solution label")->required();
  recon->add_option("--anchor", anchor, "group coordinates at the node nearest the origin");
  auto* list = app.add_subcommand("list-examples", "list built-in examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*check) return cmd_check(check_opts);
    if (*reduce) return cmd_reduce(reduce_opts, base);
    if (*recon) return cmd_reconstruct(recon_opts, solution, anchor);
    if (*list) return cmd_list();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const InconsistentConstraints& e) {
    std::cerr << "inconsistent: " << e.what() << "\n";
    return kInconsistent;
  } catch (const NewtonDivergence& e) {
    std::cerr << "G-regularity failure: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidParameters& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kInvalid;
  } catch (const UnknownExample& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const SingularMatrix& e) {
    std::cerr << "singular system: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
