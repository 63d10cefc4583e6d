#include "dsflow/cli/expr.hpp"

#include "dsflow/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace dsflow::cli {

struct Expression::Node {
  enum class Kind { number, theta, phi, add, sub, mul, div, neg, call } kind;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double theta, double phi) const {
    switch (kind) {
      case Kind::number: return value;
      case Kind::theta: return theta;
      case Kind::phi: return phi;
      case Kind::add: return lhs->eval(theta, phi) + rhs->eval(theta, phi);
      case Kind::sub: return lhs->eval(theta, phi) - rhs->eval(theta, phi);
      case Kind::mul: return lhs->eval(theta, phi) * rhs->eval(theta, phi);
      case Kind::div: return lhs->eval(theta, phi) / rhs->eval(theta, phi);
      case Kind::neg: return -lhs->eval(theta, phi);
      case Kind::call: return fn(lhs->eval(theta, phi));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

double (*lookup(const std::string& name))(double) {
  if (name == "sin") return [](double x) { return std::sin(x); };
  if (name == "cos") return [](double x) { return std::cos(x); };
  if (name == "exp") return [](double x) { return std::exp(x); };
  if (name == "cosh") return [](double x) { return std::cosh(x); };
  if (name == "sinh") return [](double x) { return std::sinh(x); };
  return nullptr;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  bool uses_phi = false;

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("rho0: " + what + " at column " + std::to_string(pos_ + 1));
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
      if (accept('+')) lhs = make(Kind::add, lhs, term());
      else if (accept('-')) lhs = make(Kind::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Kind::mul, lhs, unary());
      else if (accept('/')) lhs = make(Kind::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::neg, unary());
    if (accept('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    double v = 0.0;
    const char* begin = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("bad number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::number;
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "theta") return make(Kind::theta);
    if (name == "phi") {
      uses_phi = true;
      return make(Kind::phi);
    }
    if (name == "pi" || name == "e") {
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::number;
      n->value = name == "pi" ? std::numbers::pi : std::numbers::e;
      return n;
    }
    auto* fn = lookup(name);
    if (!fn) {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (!accept('(')) fail("expected '(' after " + name);
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::call;
    n->fn = fn;
    n->lhs = expr();
    if (!accept(')')) fail("expected ')'");
    return n;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  Expression e;
  e.root_ = p.parse_all();
  e.text_ = text;
  e.uses_phi_ = p.uses_phi;
  return e;
}

double Expression::eval(double theta, double phi) const { return root_->eval(theta, phi); }

}  // namespace dsflow::cli
