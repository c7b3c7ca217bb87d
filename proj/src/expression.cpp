#include "routhk/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "routhk/errors.hpp"

namespace routhk {

enum class Kind { Number, Name, Slot, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Fn { Sin, Cos, Sinh, Cosh, Sqrt };

struct Expression::Node {
  Kind kind = Kind::Number;
  double value = 0.0;
  std::string name;
  std::size_t slot = 0;
  Fn fn = Fn::Sin;
  std::shared_ptr<const Node> a, b;
};

using NodePtr = std::shared_ptr<const Expression::Node>;

namespace {

NodePtr number(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->value = v;
  return n;
}

NodePtr make(Kind k, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << "expression '" << s_ << "': " << what << " at position " << pos_;
    throw ParseError(msg.str());
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Kind::Add, lhs, term());
      else if (accept('-')) lhs = make(Kind::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Kind::Mul, lhs, unary());
      else if (accept('/')) lhs = make(Kind::Div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return number(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (accept('(')) {
        static const std::pair<const char*, Fn> fns[] = {
            {"sin", Fn::Sin}, {"cos", Fn::Cos}, {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh},
            {"sqrt", Fn::Sqrt}};
        auto it = std::find_if(std::begin(fns), std::end(fns),
                               [&](const auto& f) { return id == f.first; });
        if (it == std::end(fns)) fail("unknown function '" + id + "'");
        NodePtr arg = expr();
        if (!accept(')')) fail("expected ')'");
        auto n = std::make_shared<Expression::Node>();
        n->kind = Kind::Call;
        n->fn = it->second;
        n->a = arg;
        return n;
      }
      if (id == "pi") return number(std::numbers::pi);
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::Name;
      n->name = id;
      return n;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

void collect(const NodePtr& n, std::set<std::string>& out) {
  if (!n) return;
  if (n->kind == Kind::Name) out.insert(n->name);
  collect(n->a, out);
  collect(n->b, out);
}

template <class T>
T apply_fn(Fn f, const T& x) {
  using std::cos, std::cosh, std::sin, std::sinh, std::sqrt;
  switch (f) {
    case Fn::Sin: return sin(x);
    case Fn::Cos: return cos(x);
    case Fn::Sinh: return sinh(x);
    case Fn::Cosh: return cosh(x);
    case Fn::Sqrt: return sqrt(x);
  }
  return x;
}

template <class T>
T integer_power(const T& x, long p) {
  T r(1.0), base = x;
  for (long e = std::labs(p); e > 0; e >>= 1) {
    if (e & 1) r = r * base;
    if (e > 1) base = base * base;
  }
  return p < 0 ? T(1.0) / r : r;
}

bool is_integer(double v) { return std::abs(v) < 64 && v == std::round(v); }

template <class T>
T eval(const NodePtr& n, std::span<const T> vars) {
  switch (n->kind) {
    case Kind::Number: return T(n->value);
    case Kind::Slot: return vars[n->slot];
    case Kind::Name: throw ParseError("unbound identifier '" + n->name + "'");
    case Kind::Neg: return -eval(n->a, vars);
    case Kind::Add: return eval(n->a, vars) + eval(n->b, vars);
    case Kind::Sub: return eval(n->a, vars) - eval(n->b, vars);
    case Kind::Mul: return eval(n->a, vars) * eval(n->b, vars);
    case Kind::Div: return eval(n->a, vars) / eval(n->b, vars);
    case Kind::Pow: {
      const T base = eval(n->a, vars);
      if (n->b->kind == Kind::Number && is_integer(n->b->value))
        return integer_power(base, static_cast<long>(n->b->value));
      using std::pow;
      return pow(base, eval(n->b, vars));
    }
    case Kind::Call: return apply_fn(n->fn, eval(n->a, vars));
  }
  return T(0.0);
}

NodePtr bind(const NodePtr& n, const std::map<std::string, double>& constants,
             const std::vector<std::string>& variables) {
  if (n->kind == Kind::Number) return n;
  if (n->kind == Kind::Name) {
    const auto v = std::find(variables.begin(), variables.end(), n->name);
    if (v != variables.end()) {
      auto s = std::make_shared<Expression::Node>();
      s->kind = Kind::Slot;
      s->slot = static_cast<std::size_t>(v - variables.begin());
      s->name = n->name;
      return s;
    }
    const auto c = constants.find(n->name);
    if (c != constants.end()) return number(c->second);
    throw ParseError("unknown identifier '" + n->name + "'");
  }
  auto out = std::make_shared<Expression::Node>(*n);
  if (n->a) out->a = bind(n->a, constants, variables);
  if (n->b) out->b = bind(n->b, constants, variables);
  const bool fold = out->a->kind == Kind::Number && (!out->b || out->b->kind == Kind::Number);
  if (fold) return number(eval<double>(out, std::span<const double>{}));
  return out;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

std::vector<std::string> Expression::identifiers() const {
  std::set<std::string> ids;
  collect(root_, ids);
  return {ids.begin(), ids.end()};
}

CompiledExpression Expression::compile(const std::map<std::string, double>& constants,
                                       const std::vector<std::string>& variables) const {
  CompiledExpression c;
  c.text_ = text_;
  try {
    c.root_ = bind(root_, constants, variables);
  } catch (const ParseError& e) {
    throw ParseError("expression '" + text_ + "': " + e.what());
  }
  return c;
}

Dual2 CompiledExpression::operator()(std::span<const Dual2> vars) const {
  return eval<Dual2>(root_, vars);
}

double CompiledExpression::operator()(std::span<const double> vars) const {
  return eval<double>(root_, vars);
}

bool CompiledExpression::is_constant() const { return root_ && root_->kind == Kind::Number; }

double CompiledExpression::constant_value() const {
  if (!is_constant()) throw InvalidParameters("expression '" + text_ + "' is not constant");
  return root_->value;
}

double evaluate_constant(const std::string& text, const std::map<std::string, double>& constants) {
  return Expression::parse(text).compile(constants).constant_value();
}

}  // namespace routhk
