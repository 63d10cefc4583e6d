#pragma once

// Initial-profile expressions: numbers, theta, phi, pi, e, + - * /, unary
// minus, parentheses and sin cos exp cosh sinh.

#include <memory>
#include <string>

namespace dsflow::cli {

class Expression {
 public:
  /// Throws ParseError pointing at the offending column.
  static Expression parse(const std::string& text);

  double eval(double theta, double phi = 0.0) const;
  bool uses_phi() const noexcept { return uses_phi_; }
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  bool uses_phi_ = false;
};

}  // namespace dsflow::cli
