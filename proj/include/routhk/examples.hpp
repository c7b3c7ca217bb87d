#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "routhk/jets.hpp"
#include "routhk/lagrangian.hpp"
#include "routhk/liegroup.hpp"
#include "routhk/routh.hpp"
#include "routhk/symmetry_model.hpp"

namespace routhk {

/// Behaviour an analytic solution is expected to show.
enum class Certificate { SolvesEL, SolvesReduced, Inconsistent, NonReconstructible };

std::string to_string(Certificate c);
/// Accepts solves-EL, solves-reduced, inconsistent, non-reconstructible.
Certificate certificate_from_string(const std::string& s);

/// Expected value of one momentum component J_{beta,a} along a solution.
struct MomentumProfile {
  std::size_t beta = 0;
  std::size_t a = 0;
  std::string text;
  std::function<double(std::span<const double>)> value;  ///< t -> J_{beta,a}
};

struct AnalyticSolution {
  std::string label;
  bool reduced = false;  ///< defined on the reduced base rather than on Q
  AnalyticField field;
  Certificate expected = Certificate::SolvesEL;
  std::optional<AnalyticField> reconstruction;  ///< closed-form lift on Q
  std::vector<MomentumProfile> momentum;
  bool zero_magnetic = false;
};

struct ParameterSpec {
  std::string name;
  double default_value = 0.0;
  std::string description;
};

/// A fully wired system: Lagrangian, symmetry, connection, reduction chart,
/// momentum and the analytic solutions registered with it.
struct ExampleCase {
  std::string name;
  std::string description;
  std::map<std::string, double> parameters;
  std::vector<std::string> coordinates;
  std::vector<std::string> independents;
  LagrangianSystem lagrangian;
  SymmetryModel symmetry;
  ConnectionOneForm connection;
  MomentumValue default_mu;
  std::optional<BundleChart> chart;
  std::optional<InvariantMetricModel> metric;
  std::vector<AnalyticSolution> solutions;

  std::size_t n() const { return lagrangian.n(); }
  std::size_t k() const { return lagrangian.k(); }
  bool abelian() const;
  /// Throws InvalidParameters for an unknown label.
  const AnalyticSolution& solution(const std::string& label) const;
  /// Throws InvalidParameters when the case defines no reduction chart.
  RouthReduction reduction(const MomentumValue& mu) const;
  RouthReduction reduction() const { return reduction(default_mu); }
};

/// Names of the built-in examples.
std::vector<std::string> example_names();
/// Built-in JSON descriptor; throws UnknownExample.
const std::string& example_descriptor(const std::string& name);
/// Parameters declared by a descriptor, with defaults.
std::vector<ParameterSpec> descriptor_parameters(const std::string& json_text);

/// Loads a built-in example. `params` override declared parameters and `mu`
/// overrides the descriptor's momentum. Throws UnknownExample for unknown
/// names and InvalidParameters for unknown parameters or violated
/// constraints.
ExampleCase load_example(const std::string& name, const std::map<std::string, double>& params = {},
                         const std::optional<MomentumValue>& mu = std::nullopt);

/// Loads a system from descriptor text with the built-in schema. Throws
/// ParseError on malformed descriptors.
ExampleCase load_system(const std::string& json_text,
                        const std::map<std::string, double>& params = {},
                        const std::optional<MomentumValue>& mu = std::nullopt);

struct CertificateEntry {
  std::string solution;
  std::string check;
  double max_residual = 0.0;
  std::string expected;
  bool passed = false;
};

struct CertificateReport {
  std::vector<CertificateEntry> entries;
  bool passed() const;
  const CertificateEntry* find(const std::string& solution, const std::string& check) const;
  /// CSV with header solution,check,max_residual,expected,passed.
  void write_csv(std::ostream& os) const;
};

struct CertificateOptions {
  double tol = 1e-8;               ///< pointwise tolerance for exact-mode checks
  double grid_tol = 1e-6;          ///< absolute tolerance for grid-discretized checks
  std::optional<MomentumValue> mu;  ///< defaults to the case momentum
};

/// Acceptance rule for a grid-discretized quantity that should vanish:
/// `coarse` at spacing h is at most `tol`, or the ratio to `fine` at h/2 lies
/// in [3.5, 4.5] (second-order decay).
bool vanishes_on_grid(double coarse, double fine, double tol);

/// Node nearest to the parameter origin.
MultiIndex origin_node(const Grid& grid);

/// Lifts a reduced solution through the momentum constraints with the anchor
/// at the node nearest the origin. The anchor value comes from the closed
/// form when one is registered and is zero otherwise.
FieldSample reconstruct_solution(const ExampleCase& c, const AnalyticSolution& s, const Grid& grid,
                                 const MomentumValue& mu,
                                 std::optional<std::vector<double>> anchor_value = std::nullopt);

/// Evaluates every registered solution against its expected certificate.
CertificateReport run_certificates(const ExampleCase& c, const Grid& grid,
                                   const CertificateOptions& options = {});

}  // namespace routhk
