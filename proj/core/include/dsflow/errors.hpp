#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsflow {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (k out of range, bad index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or non-finite input data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A curvature vector left the Garding cone where membership was required.
class ConeError : public Error {
 public:
  ConeError(const std::string& what, std::ptrdiff_t node = -1)
      : Error(what), node_(node) {}
  std::ptrdiff_t node() const noexcept { return node_; }

 private:
  std::ptrdiff_t node_;
};

/// cosh^2(rho) - |grad rho|^2 <= 0 at some node.
class SpacelikeError : public Error {
 public:
  SpacelikeError(std::size_t node, double w2)
      : Error("spacelike violation at node " + std::to_string(node) +
              " (w^2 = " + std::to_string(w2) + ")"),
        node_(node),
        w2_(w2) {}
  std::size_t node() const noexcept { return node_; }
  double w2() const noexcept { return w2_; }

 private:
  std::size_t node_;
  double w2_;
};

/// A hypersurface failed a precondition (spacelike, strictly k-convex).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Text input that could not be parsed; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The time integrator gave up; reason() is a short machine-readable tag.
class FlowAbort : public Error {
 public:
  FlowAbort(std::string reason, const std::string& detail)
      : Error(reason + ": " + detail), reason_(std::move(reason)) {}
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

}  // namespace dsflow
