#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypercalc/polynomial.hpp"
#include "hypercalc/rational.hpp"

namespace hypercalc {

/// Which grammar an expression tree belongs to. The node set is shared;
/// each kind admits a different variable and a different set of primitives.
enum class ExprKind { hyper_term, sequence, function };

enum class Op {
  constant,
  variable,  // W, n or x depending on the kind
  pi,
  bound,     // named binding (REPL `let`), hyper terms only
  add,
  sub,
  mul,
  div,
  neg,
  pow,       // integer exponent
  exp,
  ln,
  sin,
  cos,
  sqrt,
  abs,
  geom,      // base^variable, base > 0
  altsign,   // (-1)^n
  patch,     // finite list of (index, value) overrides of args[0]
};

struct PatchEntry {
  std::uint64_t index = 0;
  Rational value;
  friend bool operator==(const PatchEntry&, const PatchEntry&) = default;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  Op op = Op::constant;
  Rational value;                  // constant value or geom base
  long exponent = 0;               // pow
  std::string name;                // bound
  std::vector<ExprPtr> args;
  std::vector<PatchEntry> patches; // sorted by index, duplicate-free
};

bool structurally_equal(const ExprNode& a, const ExprNode& b);
std::string render(const ExprNode& node, ExprKind kind);

namespace expr {
ExprPtr constant(const Rational& c);
ExprPtr variable();
ExprPtr unary(Op op, ExprPtr arg);
ExprPtr binary(Op op, ExprPtr lhs, ExprPtr rhs);
ExprPtr power(ExprPtr base, long exponent);
}  // namespace expr

/// Real-function expression over `x`: constants, field operations, integer
/// powers and exp, ln, sin, cos, sqrt, abs.
class FuncExpr {
 public:
  explicit FuncExpr(ExprPtr root) : root_(std::move(root)) {}

  static FuncExpr x() { return FuncExpr(expr::variable()); }
  static FuncExpr constant(const Rational& c) { return FuncExpr(expr::constant(c)); }
  static FuncExpr pi();

  const ExprNode& root() const { return *root_; }
  const ExprPtr& ptr() const { return root_; }

  /// Only constants, x, field operations and integer powers.
  bool is_rational_only() const;
  /// Polynomial form when the expression is a polynomial in x (division
  /// only by nonzero constant subexpressions).
  std::optional<Polynomial> as_polynomial() const;

  std::string to_string() const { return render(*root_, ExprKind::function); }

  friend bool operator==(const FuncExpr& a, const FuncExpr& b) {
    return structurally_equal(*a.root_, *b.root_);
  }

 private:
  ExprPtr root_;
};

FuncExpr operator+(const FuncExpr& a, const FuncExpr& b);
FuncExpr operator-(const FuncExpr& a, const FuncExpr& b);
FuncExpr operator*(const FuncExpr& a, const FuncExpr& b);
FuncExpr operator/(const FuncExpr& a, const FuncExpr& b);
FuncExpr operator-(const FuncExpr& a);
FuncExpr pow(const FuncExpr& a, long exponent);
FuncExpr exp(const FuncExpr& a);
FuncExpr ln(const FuncExpr& a);
FuncExpr sin(const FuncExpr& a);
FuncExpr cos(const FuncExpr& a);
FuncExpr sqrt(const FuncExpr& a);
FuncExpr abs(const FuncExpr& a);

/// Closed-form sequence over the index `n`: rationals, field operations,
/// integer powers, geom(r) = r^n, altsign = (-1)^n, and finite patches.
class SeqExpr {
 public:
  explicit SeqExpr(ExprPtr root) : root_(std::move(root)) {}

  static SeqExpr n() { return SeqExpr(expr::variable()); }
  static SeqExpr constant(const Rational& c) { return SeqExpr(expr::constant(c)); }
  /// r^n; a negative base becomes altsign * |r|^n.
  static SeqExpr geom(const Rational& base);
  static SeqExpr altsign();
  static SeqExpr patch(std::vector<PatchEntry> entries, const SeqExpr& base);

  const ExprNode& root() const { return *root_; }
  const ExprPtr& ptr() const { return root_; }

  std::string to_string() const { return render(*root_, ExprKind::sequence); }

  friend bool operator==(const SeqExpr& a, const SeqExpr& b) {
    return structurally_equal(*a.root_, *b.root_);
  }

 private:
  ExprPtr root_;
};

SeqExpr operator+(const SeqExpr& a, const SeqExpr& b);
SeqExpr operator-(const SeqExpr& a, const SeqExpr& b);
SeqExpr operator*(const SeqExpr& a, const SeqExpr& b);
SeqExpr operator/(const SeqExpr& a, const SeqExpr& b);
SeqExpr operator-(const SeqExpr& a);
SeqExpr pow(const SeqExpr& a, long exponent);

}  // namespace hypercalc
