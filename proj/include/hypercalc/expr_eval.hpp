#pragma once

#include <cmath>
#include <string>

#include "hypercalc/error.hpp"
#include "hypercalc/expr.hpp"

namespace hypercalc {

/// Evaluates a function-grammar tree over an arbitrary value domain. The
/// domain supplies constants and every primitive; unsupported primitives
/// should throw from the domain.
template <class Domain>
typename Domain::value_type evaluate_function(const ExprNode& node,
                                              const typename Domain::value_type& x,
                                              const Domain& d) {
  auto arg = [&](std::size_t i) { return evaluate_function(*node.args[i], x, d); };
  switch (node.op) {
    case Op::constant: return d.constant(node.value);
    case Op::variable: return x;
    case Op::pi: return d.pi();
    case Op::add: return d.add(arg(0), arg(1));
    case Op::sub: return d.sub(arg(0), arg(1));
    case Op::mul: return d.mul(arg(0), arg(1));
    case Op::div: return d.div(arg(0), arg(1));
    case Op::neg: return d.neg(arg(0));
    case Op::pow: return d.pow(arg(0), node.exponent);
    case Op::exp: return d.exp(arg(0));
    case Op::ln: return d.ln(arg(0));
    case Op::sin: return d.sin(arg(0));
    case Op::cos: return d.cos(arg(0));
    case Op::sqrt: return d.sqrt(arg(0));
    case Op::abs: return d.abs(arg(0));
    case Op::bound:
    case Op::geom:
    case Op::altsign:
    case Op::patch: break;
  }
  throw Error(ErrorCode::unsupported_form, "primitive not valid in a function expression");
}

/// Exact rational evaluation; transcendental primitives are rejected.
struct ExactDomain {
  using value_type = Rational;
  Rational constant(const Rational& c) const { return c; }
  [[noreturn]] Rational pi() const { transcendental("pi"); }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational div(const Rational& a, const Rational& b) const { return a / b; }
  Rational neg(const Rational& a) const { return -a; }
  Rational pow(const Rational& a, long e) const { return a.pow(e); }
  [[noreturn]] Rational exp(const Rational&) const { transcendental("exp"); }
  [[noreturn]] Rational ln(const Rational&) const { transcendental("ln"); }
  [[noreturn]] Rational sin(const Rational&) const { transcendental("sin"); }
  [[noreturn]] Rational cos(const Rational&) const { transcendental("cos"); }
  [[noreturn]] Rational sqrt(const Rational&) const { transcendental("sqrt"); }
  Rational abs(const Rational& a) const { return a.abs(); }

  [[noreturn]] static void transcendental(const char* what) {
    throw Error(ErrorCode::unsupported_form, std::string(what) + " has no exact rational value");
  }
};

/// Binary floating-point evaluation with explicit domain checks.
struct FloatDomain {
  using value_type = double;
  double constant(const Rational& c) const { return c.to_double(); }
  double pi() const { return 3.14159265358979323846; }
  double add(double a, double b) const { return a + b; }
  double sub(double a, double b) const { return a - b; }
  double mul(double a, double b) const { return a * b; }
  double div(double a, double b) const {
    if (b == 0.0) throw Error(ErrorCode::division_by_zero, "division by zero");
    return a / b;
  }
  double neg(double a) const { return -a; }
  double pow(double a, long e) const {
    if (a == 0.0 && e < 0) throw Error(ErrorCode::division_by_zero, "negative power of zero");
    return std::pow(a, static_cast<double>(e));
  }
  double exp(double a) const { return std::exp(a); }
  double ln(double a) const {
    if (!(a > 0.0)) throw Error(ErrorCode::domain, "ln of a nonpositive value");
    return std::log(a);
  }
  double sin(double a) const { return std::sin(a); }
  double cos(double a) const { return std::cos(a); }
  double sqrt(double a) const {
    if (a < 0.0) throw Error(ErrorCode::domain, "sqrt of a negative value");
    return std::sqrt(a);
  }
  double abs(double a) const { return std::fabs(a); }
};

inline Rational evaluate_exact(const FuncExpr& f, const Rational& x) {
  return evaluate_function(f.root(), x, ExactDomain{});
}

inline double evaluate_float(const FuncExpr& f, double x) {
  return evaluate_function(f.root(), x, FloatDomain{});
}

}  // namespace hypercalc
