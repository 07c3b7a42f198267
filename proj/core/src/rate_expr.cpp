#include "stochrel/rate_expr.hpp"

#include <cctype>
#include <functional>

namespace stochrel {

ParseError::ParseError(const std::string& message, std::size_t pos)
    : Error(message + " at position " + std::to_string(pos)), position(pos) {}

namespace {

using NodePtr = std::shared_ptr<const RateExpr::Node>;
using Op = RateExpr::Op;
using Cmp = RateExpr::Cmp;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<RateExpr::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : s_(src) {}

  NodePtr parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }
  bool peek_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }
  bool keyword(const std::string& kw) {
    skip();
    if (s_.compare(pos_, kw.size(), kw) != 0) return false;
    std::size_t after = pos_ + kw.size();
    std::size_t k = after;
    while (k < s_.size() && std::isspace(static_cast<unsigned char>(s_[k]))) ++k;
    if (k < s_.size() && s_[k] == '(') {
      pos_ = after;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept("+")) {
        lhs = make(Op::add, lhs, term());
      } else if (accept("-")) {
        lhs = make(Op::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = factor();
    while (accept("*")) lhs = make(Op::mul, lhs, factor());
    return lhs;
  }

  NodePtr factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (peek_digit()) {
      std::string num = digits();
      std::string den = "1";
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        den = digits();
      }
      if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal literals are not allowed");
      auto n = std::make_shared<RateExpr::Node>();
      n->op = Op::constant;
      BigInt d(den);
      if (d == 0) fail("zero denominator");
      n->value = Rational(BigInt(num), d);
      n->value.canonicalize();
      return n;
    }
    if (accept("(")) {
      auto e = expr();
      expect(")");
      return e;
    }
    if (keyword("min") || keyword("max")) {
      const bool is_min = s_.compare(pos_ - 3, 3, "min") == 0;
      expect("(");
      auto a = expr();
      expect(",");
      auto b = expr();
      expect(")");
      return make(is_min ? Op::min : Op::max, a, b);
    }
    if (keyword("ind")) {
      expect("(");
      auto a = expr();
      Cmp c;
      if (accept("<=")) {
        c = Cmp::le;
      } else if (accept(">=")) {
        c = Cmp::ge;
      } else if (accept("==")) {
        c = Cmp::eq;
      } else if (accept("<")) {
        c = Cmp::lt;
      } else if (accept(">")) {
        c = Cmp::gt;
      } else {
        fail("expected comparison operator");
      }
      auto b = expr();
      expect(")");
      auto n = std::make_shared<RateExpr::Node>(*make(Op::ind, a, b));
      n->cmp = c;
      return n;
    }
    if (accept("x")) {
      expect("[");
      skip();
      std::string idx = digits();
      expect("]");
      auto n = std::make_shared<RateExpr::Node>();
      n->op = Op::variable;
      n->index = std::stoul(idx);
      if (n->index == 0) fail("coordinate indices are 1-based");
      return n;
    }
    fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

Rational eval(const RateExpr::Node& n, const Point& x) {
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::variable:
      if (n.index > x.size()) throw Error("x[" + std::to_string(n.index) + "] out of range");
      return Rational(static_cast<long>(x[n.index - 1]));
    case Op::add:
      return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Op::sub:
      return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Op::mul:
      return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Op::min:
      return std::min(eval(*n.lhs, x), eval(*n.rhs, x));
    case Op::max:
      return std::max(eval(*n.lhs, x), eval(*n.rhs, x));
    case Op::ind: {
      const Rational a = eval(*n.lhs, x);
      const Rational b = eval(*n.rhs, x);
      bool r = false;
      switch (n.cmp) {
        case Cmp::lt: r = a < b; break;
        case Cmp::le: r = a <= b; break;
        case Cmp::eq: r = a == b; break;
        case Cmp::ge: r = a >= b; break;
        case Cmp::gt: r = a > b; break;
      }
      return Rational(r ? 1 : 0);
    }
  }
  return Rational(0);
}

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::eq: return "==";
    case Cmp::ge: return ">=";
    case Cmp::gt: return ">";
  }
  return "?";
}

bool additive(const RateExpr::Node& n) { return n.op == Op::add || n.op == Op::sub; }

std::string print(const RateExpr::Node& n) {
  switch (n.op) {
    case Op::constant:
      return to_string(n.value);
    case Op::variable:
      return "x[" + std::to_string(n.index) + "]";
    case Op::add:
    case Op::sub: {
      std::string rhs = print(*n.rhs);
      if (additive(*n.rhs)) rhs = "(" + rhs + ")";
      return print(*n.lhs) + (n.op == Op::add ? " + " : " - ") + rhs;
    }
    case Op::mul: {
      std::string lhs = print(*n.lhs);
      std::string rhs = print(*n.rhs);
      if (additive(*n.lhs)) lhs = "(" + lhs + ")";
      if (additive(*n.rhs) || n.rhs->op == Op::mul) rhs = "(" + rhs + ")";
      return lhs + "*" + rhs;
    }
    case Op::min:
    case Op::max:
      return std::string(n.op == Op::min ? "min(" : "max(") + print(*n.lhs) + ", " + print(*n.rhs) + ")";
    case Op::ind:
      return "ind(" + print(*n.lhs) + " " + cmp_text(n.cmp) + " " + print(*n.rhs) + ")";
  }
  return {};
}

bool same(const RateExpr::Node& a, const RateExpr::Node& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::constant:
      return a.value == b.value;
    case Op::variable:
      return a.index == b.index;
    case Op::ind:
      if (a.cmp != b.cmp) return false;
      [[fallthrough]];
    default:
      return same(*a.lhs, *b.lhs) && same(*a.rhs, *b.rhs);
  }
}

std::size_t max_var(const RateExpr::Node& n) {
  if (n.op == Op::variable) return n.index;
  if (n.op == Op::constant) return 0;
  return std::max(max_var(*n.lhs), max_var(*n.rhs));
}

}  // namespace

RateExpr::RateExpr() : RateExpr(Rational(0)) {}

RateExpr::RateExpr(const Rational& v) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = v;
  root_ = n;
}

RateExpr RateExpr::constant(const Rational& v) { return RateExpr(v); }

Rational RateExpr::evaluate(const Point& x) const { return eval(*root_, x); }
std::string RateExpr::to_string() const { return print(*root_); }
std::size_t RateExpr::max_index() const { return max_var(*root_); }

bool operator==(const RateExpr& a, const RateExpr& b) { return same(*a.root_, *b.root_); }

RateExpr parse_rate(const std::string& src) { return RateExpr(Parser(src).parse()); }

}  // namespace stochrel
