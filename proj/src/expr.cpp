#include "hypercalc/expr.hpp"

#include <algorithm>

#include "hypercalc/error.hpp"
#include "hypercalc/expr_eval.hpp"
#include "hypercalc/hyper_rat.hpp"

namespace hypercalc {

namespace expr {

ExprPtr constant(const Rational& c) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::constant;
  n->value = c;
  return n;
}

ExprPtr variable() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::variable;
  return n;
}

ExprPtr unary(Op op, ExprPtr arg) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->args.push_back(std::move(arg));
  return n;
}

ExprPtr binary(Op op, ExprPtr lhs, ExprPtr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->args.push_back(std::move(lhs));
  n->args.push_back(std::move(rhs));
  return n;
}

ExprPtr power(ExprPtr base, long exponent) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::pow;
  n->exponent = exponent;
  n->args.push_back(std::move(base));
  return n;
}

}  // namespace expr

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  switch (a.op) {
    case Op::constant:
    case Op::geom:
      if (a.value != b.value) return false;
      break;
    case Op::pow:
      if (a.exponent != b.exponent) return false;
      break;
    case Op::bound:
      if (a.name != b.name) return false;
      break;
    case Op::patch:
      if (a.patches != b.patches) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

namespace {

int precedence(const ExprNode& n) {
  switch (n.op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    case Op::constant:
      // negative or fractional constants render parenthesised
      return 5;
    default: return 5;
  }
}

const char* variable_name(ExprKind kind) {
  switch (kind) {
    case ExprKind::hyper_term: return "W";
    case ExprKind::sequence: return "n";
    case ExprKind::function: return "x";
  }
  return "?";
}

const char* function_name(Op op) {
  switch (op) {
    case Op::exp: return "exp";
    case Op::ln: return "ln";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::sqrt: return "sqrt";
    case Op::abs: return "abs";
    default: return nullptr;
  }
}

std::string wrap_if(bool cond, std::string s) { return cond ? "(" + s + ")" : s; }

}  // namespace

std::string render(const ExprNode& node, ExprKind kind) {
  auto sub = [&](std::size_t i) { return render(*node.args[i], kind); };
  const int prec = precedence(node);
  switch (node.op) {
    case Op::constant: {
      const std::string s = node.value.to_string();
      return (node.value.sign() < 0 || !node.value.is_integer()) ? "(" + s + ")" : s;
    }
    case Op::variable: return variable_name(kind);
    case Op::pi: return "pi";
    case Op::bound: return node.name;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      const char* sym = node.op == Op::add ? "+" : node.op == Op::sub ? "-" : node.op == Op::mul ? "*" : "/";
      const std::string lhs = wrap_if(precedence(*node.args[0]) < prec, sub(0));
      const std::string rhs = wrap_if(precedence(*node.args[1]) <= prec, sub(1));
      return lhs + sym + rhs;
    }
    case Op::neg: return "-" + wrap_if(precedence(*node.args[0]) < prec, sub(0));
    case Op::pow:
      return wrap_if(precedence(*node.args[0]) < 5, sub(0)) + "^" + std::to_string(node.exponent);
    case Op::exp:
    case Op::ln:
    case Op::sin:
    case Op::cos:
    case Op::sqrt:
    case Op::abs: return std::string(function_name(node.op)) + "(" + sub(0) + ")";
    case Op::geom: return "geom(" + node.value.to_string() + ")";
    case Op::altsign: return "altsign";
    case Op::patch: {
      std::string out = "patch[";
      for (std::size_t i = 0; i < node.patches.size(); ++i) {
        if (i) out += ",";
        out += "(" + std::to_string(node.patches[i].index) + "," + node.patches[i].value.to_string() + ")";
      }
      return out + "]{" + sub(0) + "}";
    }
  }
  return "?";
}

// --- FuncExpr -------------------------------------------------------------

FuncExpr FuncExpr::pi() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::pi;
  return FuncExpr(n);
}

namespace {

bool rational_only(const ExprNode& n) {
  switch (n.op) {
    case Op::constant:
    case Op::variable: return true;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
    case Op::neg:
    case Op::pow:
      return std::all_of(n.args.begin(), n.args.end(), [](const ExprPtr& a) { return rational_only(*a); });
    default: return false;
  }
}

std::optional<Polynomial> polynomial_of(const ExprNode& n) {
  auto arg = [&](std::size_t i) { return polynomial_of(*n.args[i]); };
  switch (n.op) {
    case Op::constant: return Polynomial::constant(n.value);
    case Op::variable: return Polynomial::variable();
    case Op::add: {
      auto a = arg(0), b = arg(1);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case Op::sub: {
      auto a = arg(0), b = arg(1);
      if (!a || !b) return std::nullopt;
      return *a - *b;
    }
    case Op::mul: {
      auto a = arg(0), b = arg(1);
      if (!a || !b) return std::nullopt;
      return *a * *b;
    }
    case Op::div: {
      auto a = arg(0), b = arg(1);
      if (!a || !b || b->degree() != 0) return std::nullopt;
      return *a * b->coeff(0).reciprocal();
    }
    case Op::neg: {
      auto a = arg(0);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Op::pow: {
      auto a = arg(0);
      if (!a) return std::nullopt;
      if (n.exponent >= 0) return a->pow(static_cast<unsigned>(n.exponent));
      if (a->degree() == 0) return Polynomial::constant(a->coeff(0).pow(n.exponent));
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

}  // namespace

bool FuncExpr::is_rational_only() const { return rational_only(*root_); }

std::optional<Polynomial> FuncExpr::as_polynomial() const { return polynomial_of(*root_); }

FuncExpr operator+(const FuncExpr& a, const FuncExpr& b) { return FuncExpr(expr::binary(Op::add, a.ptr(), b.ptr())); }
FuncExpr operator-(const FuncExpr& a, const FuncExpr& b) { return FuncExpr(expr::binary(Op::sub, a.ptr(), b.ptr())); }
FuncExpr operator*(const FuncExpr& a, const FuncExpr& b) { return FuncExpr(expr::binary(Op::mul, a.ptr(), b.ptr())); }
FuncExpr operator/(const FuncExpr& a, const FuncExpr& b) { return FuncExpr(expr::binary(Op::div, a.ptr(), b.ptr())); }
FuncExpr operator-(const FuncExpr& a) { return FuncExpr(expr::unary(Op::neg, a.ptr())); }
FuncExpr pow(const FuncExpr& a, long exponent) { return FuncExpr(expr::power(a.ptr(), exponent)); }
FuncExpr exp(const FuncExpr& a) { return FuncExpr(expr::unary(Op::exp, a.ptr())); }
FuncExpr ln(const FuncExpr& a) { return FuncExpr(expr::unary(Op::ln, a.ptr())); }
FuncExpr sin(const FuncExpr& a) { return FuncExpr(expr::unary(Op::sin, a.ptr())); }
FuncExpr cos(const FuncExpr& a) { return FuncExpr(expr::unary(Op::cos, a.ptr())); }
FuncExpr sqrt(const FuncExpr& a) { return FuncExpr(expr::unary(Op::sqrt, a.ptr())); }
FuncExpr abs(const FuncExpr& a) { return FuncExpr(expr::unary(Op::abs, a.ptr())); }

// --- SeqExpr --------------------------------------------------------------

SeqExpr SeqExpr::geom(const Rational& base) {
  if (base.is_zero()) throw Error(ErrorCode::domain, "geom base must be nonzero");
  auto n = std::make_shared<ExprNode>();
  n->op = Op::geom;
  n->value = base.abs();
  SeqExpr g{ExprPtr(n)};
  return base.sign() < 0 ? altsign() * g : g;
}

SeqExpr SeqExpr::altsign() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::altsign;
  return SeqExpr(n);
}

SeqExpr SeqExpr::patch(std::vector<PatchEntry> entries, const SeqExpr& base) {
  std::sort(entries.begin(), entries.end(),
            [](const PatchEntry& a, const PatchEntry& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].index == entries[i - 1].index)
      throw Error(ErrorCode::invalid_argument, "duplicate patch index " + std::to_string(entries[i].index));
  auto n = std::make_shared<ExprNode>();
  n->op = Op::patch;
  n->patches = std::move(entries);
  n->args.push_back(base.ptr());
  return SeqExpr(n);
}

SeqExpr operator+(const SeqExpr& a, const SeqExpr& b) { return SeqExpr(expr::binary(Op::add, a.ptr(), b.ptr())); }
SeqExpr operator-(const SeqExpr& a, const SeqExpr& b) { return SeqExpr(expr::binary(Op::sub, a.ptr(), b.ptr())); }
SeqExpr operator*(const SeqExpr& a, const SeqExpr& b) { return SeqExpr(expr::binary(Op::mul, a.ptr(), b.ptr())); }
SeqExpr operator/(const SeqExpr& a, const SeqExpr& b) { return SeqExpr(expr::binary(Op::div, a.ptr(), b.ptr())); }
SeqExpr operator-(const SeqExpr& a) { return SeqExpr(expr::unary(Op::neg, a.ptr())); }
SeqExpr pow(const SeqExpr& a, long exponent) { return SeqExpr(expr::power(a.ptr(), exponent)); }

// --- exact composition in the hyperreal field ------------------------------

namespace {

struct HyperDomain {
  using value_type = HyperRat;
  HyperRat constant(const Rational& c) const { return HyperRat(c); }
  [[noreturn]] HyperRat pi() const { reject("pi"); }
  HyperRat add(const HyperRat& a, const HyperRat& b) const { return a + b; }
  HyperRat sub(const HyperRat& a, const HyperRat& b) const { return a - b; }
  HyperRat mul(const HyperRat& a, const HyperRat& b) const { return a * b; }
  HyperRat div(const HyperRat& a, const HyperRat& b) const {
    if (b.is_zero()) throw Error(ErrorCode::identically_singular, "denominator vanishes identically");
    return a / b;
  }
  HyperRat neg(const HyperRat& a) const { return -a; }
  HyperRat pow(const HyperRat& a, long e) const {
    if (e < 0 && a.is_zero()) throw Error(ErrorCode::identically_singular, "negative power of zero");
    return a.pow(e);
  }
  [[noreturn]] HyperRat exp(const HyperRat&) const { reject("exp"); }
  [[noreturn]] HyperRat ln(const HyperRat&) const { reject("ln"); }
  [[noreturn]] HyperRat sin(const HyperRat&) const { reject("sin"); }
  [[noreturn]] HyperRat cos(const HyperRat&) const { reject("cos"); }
  [[noreturn]] HyperRat sqrt(const HyperRat&) const { reject("sqrt"); }
  [[noreturn]] HyperRat abs(const HyperRat&) const { reject("abs"); }

  [[noreturn]] static void reject(const char* what) {
    throw Error(ErrorCode::unsupported_form,
                std::string(what) + " is outside the rational-function fragment");
  }
};

}  // namespace

HyperRat compose_rational(const FuncExpr& f, const HyperRat& a) {
  return evaluate_function(f.root(), a, HyperDomain{});
}

}  // namespace hypercalc
