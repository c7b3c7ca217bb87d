#include <map>
#include <string>

namespace routhk::detail {

const std::map<std::string, std::string>& builtin_descriptors() {
  static const std::map<std::string, std::string> table = {
      {"laplace", R"json({
  "name": "laplace",
  "description": "Scalar field with L = 1/2 |v|^2; solutions are harmonic functions",
  "parameters": [{"name": "k", "default": 2, "description": "number of independent variables"}],
  "constraints": [{"expr": "k", "rule": "integer", "min": 2, "max": 4,
                   "message": "k must be an integer between 2 and 4"}],
  "k": "k",
  "coordinates": ["q"],
  "lagrangian": {"metric": [[0, 0, "1"]]},
  "symmetry": {"labels": ["translation"], "generators": [["1"]]},
  "connection": {"components": [["1"]]},
  "mu": [["1", "2"]],
  "solutions": [
    {"label": "saddle", "space": "full", "components": ["t1^2 - t2^2"], "expected": "solves-EL"},
    {"label": "affine", "space": "full", "components": ["t1 + 2*t2"], "expected": "solves-EL",
     "momentum": [[0, 0, "1"], [0, 1, "2"]]},
    {"label": "sinsinh", "space": "full", "components": ["sin(t1)*sinh(t2)"],
     "expected": "non-reconstructible", "momentum": [[0, 0, "cos(t1)*sinh(t2)"]]}
  ]
})json"},
      {"navier", R"json({
  "name": "navier",
  "description": "Navier equations of 2D linear isotropic elasticity, reduced by translations of q1",
  "parameters": [{"name": "lambda", "default": 2, "description": "first Lame modulus"},
                 {"name": "nu", "default": 1, "description": "second Lame modulus"}],
  "constraints": [
    {"expr": "nu", "rule": "nonzero", "message": "nu != 0 (regularity)"},
    {"expr": "2*lambda + 3*nu", "rule": "nonzero", "message": "2*lambda + 3*nu != 0 (regularity)"},
    {"expr": "lambda + 2*nu", "rule": "nonzero", "message": "lambda + 2*nu != 0 (G-regularity)"}],
  "k": 2,
  "coordinates": ["q1", "q2"],
  "independents": ["x", "y"],
  "lagrangian": {"monomials": [
    [0, 0, 0, 0, "lambda/2 + nu"], [1, 1, 1, 1, "lambda/2 + nu"],
    [0, 1, 0, 1, "nu/2"], [1, 0, 1, 0, "nu/2"],
    [0, 0, 1, 1, "lambda + nu"]]},
  "symmetry": {"labels": ["translation q1"], "generators": [["1", "0"]]},
  "connection": {"components": [["1", "0"]]},
  "reduction": {"base": [1]},
  "mu": [["1", "1"]],
  "solutions": [
    {"label": "xy", "space": "reduced", "components": ["x*y"], "expected": "solves-reduced",
     "zero_magnetic": true,
     "reconstruction": ["(2*mu1*x - (lambda + nu)*x^2)/(2*(lambda + 2*nu)) + mu2*y/nu", "x*y"]},
    {"label": "coscosh", "space": "reduced",
     "components": ["cos(x)*cosh(sqrt((lambda + 2*nu)/(2*lambda + 3*nu))*y)"],
     "expected": "inconsistent"},
    {"label": "const", "space": "reduced", "components": ["1/2"], "expected": "solves-reduced",
     "reconstruction": ["mu1*x/(lambda + 2*nu) + mu2*y/nu", "1/2"]},
    {"label": "nonreconstructible", "space": "full",
     "components": ["y^2 - (lambda + 3*nu)*x^2/(2*(lambda + 2*nu))", "x*y"],
     "expected": "non-reconstructible", "momentum": [[0, 0, "-2*nu*x"]]}
  ]
})json"},
      {"complex_scalar", R"json({
  "name": "complex_scalar",
  "description": "Complex scalar field with quartic interaction in polar field coordinates (rho, theta)",
  "parameters": [{"name": "m", "default": 1, "description": "mass"},
                 {"name": "g", "default": 1, "description": "quartic coupling"},
                 {"name": "k", "default": 2, "description": "number of independent variables"}],
  "constraints": [
    {"expr": "k", "rule": "integer", "min": 2, "max": 4, "message": "k must be an integer between 2 and 4"},
    {"expr": "1 + m^2 + g", "rule": "positive", "message": "1 + m^2 + g > 0 (ring solution)"}],
  "k": "k",
  "coordinates": ["rho", "theta"],
  "lagrangian": {"metric": [[0, 0, "1"], [1, 1, "rho^2"]], "signature": "minkowski",
                 "potential": "m^2*rho^2/2 + g*rho^4/4"},
  "symmetry": {"labels": ["rotation"], "generators": [["0", "1"]]},
  "connection": {"components": [["0", "1"]]},
  "reduction": {"base": [0], "fibre_point": [1, 0]},
  "mu": [["-1", "sqrt(1 + m^2 + g)"]],
  "solutions": [
    {"label": "ring", "space": "reduced", "components": ["1"], "expected": "solves-reduced",
     "zero_magnetic": true,
     "reconstruction": ["1", "t1 + sqrt(1 + m^2 + g)*t2"]},
    {"label": "rotation", "space": "full", "components": ["1", "t1 + sqrt(1 + m^2 + g)*t2"],
     "expected": "solves-EL", "momentum": [[0, 0, "-1"], [0, 1, "sqrt(1 + m^2 + g)"]]}
  ]
})json"},
      {"harmonic_a410", R"json({
  "name": "harmonic_a410",
  "description": "Harmonic maps into R x A410 with a left-invariant metric",
  "parameters": [{"name": "gamma", "default": 1, "description": "coupling of dq and dtheta"},
                 {"name": "k", "default": 2, "description": "number of independent variables"}],
  "constraints": [{"expr": "k", "rule": "integer", "min": 2, "max": 4,
                   "message": "k must be an integer between 2 and 4"}],
  "k": "k",
  "coordinates": ["q", "x", "y", "z", "theta"],
  "lagrangian": {"metric": [[0, 0, "1"], [0, 4, "gamma/2"], [1, 1, "1"], [2, 2, "1"],
                            [1, 4, "-y/2"], [2, 4, "x/2"], [3, 4, "1/2"]]},
  "symmetry": {
    "labels": ["e_x", "e_y", "e_z", "e_theta"],
    "structure": [[0, 1, 2, -2], [0, 3, 1, 1], [1, 3, 0, -1]],
    "generators": [["0", "1", "0", "-y", "0"], ["0", "0", "1", "x", "0"],
                   ["0", "0", "0", "1", "0"], ["0", "y", "-x", "0", "1"]]},
  "connection": "mechanical",
  "reduction": {"base": [0]},
  "mu": [["0"], ["0"], ["1"], ["0"]],
  "solutions": [
    {"label": "affine", "space": "reduced", "components": ["3/10*t1 - 7/10*t2"],
     "expected": "solves-reduced", "zero_magnetic": true},
    {"label": "line", "space": "full", "components": ["3/10*t1 - 7/10*t2", "0", "0", "0", "0"],
     "expected": "solves-EL",
     "momentum": [[2, 0, "0"], [3, 0, "3*gamma/20"], [3, 1, "-7*gamma/20"]]}
  ]
})json"},
      {"harmonic_generic", R"json({
  "name": "harmonic_generic",
  "description": "Harmonic maps into the hyperbolic half-plane, reduced by horizontal translations",
  "parameters": [{"name": "c1", "default": 0.6, "description": "slope along t1"},
                 {"name": "c2", "default": 0.8, "description": "slope along t2"}],
  "constraints": [],
  "k": 2,
  "coordinates": ["q1", "q2"],
  "lagrangian": {"metric": [[0, 0, "1/q2^2"], [1, 1, "1/q2^2"]]},
  "symmetry": {"labels": ["translation q1"], "generators": [["1", "0"]]},
  "connection": "mechanical",
  "reduction": {"base": [1], "fibre_point": [0, 1]},
  "mu": [["c1", "c2"]],
  "solutions": [
    {"label": "arc", "space": "reduced", "components": ["1/cosh(c1*t1 + c2*t2)"],
     "expected": "solves-reduced", "zero_magnetic": true,
     "reconstruction": ["sinh(c1*t1 + c2*t2)/cosh(c1*t1 + c2*t2)", "1/cosh(c1*t1 + c2*t2)"]},
    {"label": "full_arc", "space": "full",
     "components": ["sinh(c1*t1 + c2*t2)/cosh(c1*t1 + c2*t2)", "1/cosh(c1*t1 + c2*t2)"],
     "expected": "solves-EL", "momentum": [[0, 0, "c1"], [0, 1, "c2"]]},
    {"label": "vertical", "space": "full",
     "components": ["0", "cosh(c1*t1 + c2*t2) + sinh(c1*t1 + c2*t2)"],
     "expected": "solves-EL", "momentum": [[0, 0, "0"], [0, 1, "0"]]}
  ]
})json"},
  };
  return table;
}

}  // namespace routhk::detail
