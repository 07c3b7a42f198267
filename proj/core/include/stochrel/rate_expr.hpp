#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stochrel/state_space.hpp"

namespace stochrel {

/// Syntax error with the 0-based character offset where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position;
};

/// Rate expression over integer state vectors:
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := literal | x[i] | '(' expr ')' | min(expr, expr) | max(expr, expr) | ind(expr cmp expr)
///   cmp    := '<' | '<=' | '==' | '>=' | '>'
/// Literals are integers or p/q; coordinates are 1-based.
class RateExpr {
 public:
  enum class Op { constant, variable, add, sub, mul, min, max, ind };
  enum class Cmp { lt, le, eq, ge, gt };

  struct Node {
    Op op;
    Rational value;          // constant
    std::size_t index = 0;   // variable (1-based)
    Cmp cmp = Cmp::eq;       // ind
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  RateExpr();
  static RateExpr constant(const Rational& v);

  Rational evaluate(const Point& x) const;
  /// Canonical text form; parsing it yields an identical tree.
  std::string to_string() const;
  /// Largest coordinate index referenced (0 when none).
  std::size_t max_index() const;
  const Node& root() const { return *root_; }

  friend bool operator==(const RateExpr& a, const RateExpr& b);
  friend RateExpr parse_rate(const std::string& src);

 private:
  explicit RateExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  explicit RateExpr(const Rational& v);
  std::shared_ptr<const Node> root_;
};

RateExpr parse_rate(const std::string& src);

}  // namespace stochrel
