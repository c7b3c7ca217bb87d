#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "routhk/dual.hpp"

namespace routhk {

class CompiledExpression;

/// Arithmetic expression over named reals: numbers, identifiers, + - * / ^,
/// unary minus, parentheses, pi and the functions sin, cos, sinh, cosh, sqrt.
class Expression {
 public:
  /// Throws ParseError with the offending position.
  static Expression parse(const std::string& text);

  const std::string& text() const { return text_; }
  /// Identifiers referenced, sorted and unique (pi excluded).
  std::vector<std::string> identifiers() const;

  /// Substitutes `constants`, folds constant subexpressions and binds the
  /// remaining identifiers to positions in `variables`. Throws ParseError on
  /// identifiers found in neither.
  CompiledExpression compile(const std::map<std::string, double>& constants,
                             const std::vector<std::string>& variables = {}) const;

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

class CompiledExpression {
 public:
  CompiledExpression() = default;
  Dual2 operator()(std::span<const Dual2> vars) const;
  double operator()(std::span<const double> vars) const;
  bool is_constant() const;
  /// Value of a constant expression; throws InvalidParameters otherwise.
  double constant_value() const;
  const std::string& text() const { return text_; }

 private:
  friend class Expression;
  std::string text_;
  std::shared_ptr<const Expression::Node> root_;
};

/// Evaluates a constant expression.
double evaluate_constant(const std::string& text, const std::map<std::string, double>& constants);

}  // namespace routhk
