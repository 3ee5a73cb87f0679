#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypercalc/expr.hpp"
#include "hypercalc/jet.hpp"

namespace hypercalc {

enum class ScalarMode { automatic, exact, floating };

/// Jet of f at a base point: c_j = f^(j)(p) / j!. Exact coefficients when
/// the function is rational-only and the point is rational; transcendental
/// primitives or a floating-point base point force floating mode.
struct LiftedJet {
  Scalar base_point;
  std::variant<Jet<Rational>, Jet<double>> jet;

  bool is_exact() const { return std::holds_alternative<Jet<Rational>>(jet); }
  unsigned order() const;
  Scalar coeff(unsigned j) const;
};

LiftedJet jet_lift(const FuncExpr& f, const Scalar& p, unsigned order,
                   ScalarMode mode = ScalarMode::automatic);

/// Evaluates f on an arbitrary input jet.
Jet<Rational> compose(const FuncExpr& f, const Jet<Rational>& input);
Jet<double> compose(const FuncExpr& f, const Jet<double>& input);

Scalar derivative(const FuncExpr& f, const Scalar& p, ScalarMode mode = ScalarMode::automatic);

struct Differential {
  Scalar slope;              // df = slope * dx
  std::vector<Scalar> tail;  // coefficients of dx^2, dx^3, ... of the increment
  std::string description;
};

Differential differential(const FuncExpr& f, const Scalar& p, unsigned tail_order = 3,
                          ScalarMode mode = ScalarMode::automatic);

struct IncrementDerivative {
  Scalar value;          // coefficient of e^n in the n-th increment
  Scalar from_jet;       // n! * c_n of the order-n jet
  bool lower_cancel = false;  // coefficients below e^n vanish
  bool consistent = false;    // value agrees with from_jet
};

/// n-th derivative as the standard part of the n-th forward increment with
/// step e divided by e^n, evaluated in jet arithmetic.
IncrementDerivative nth_derivative_via_increments(const FuncExpr& f, const Scalar& p, unsigned n,
                                                  ScalarMode mode = ScalarMode::automatic);

/// Scalar or signed infinity.
struct LimitValue {
  enum class Kind { minus_infinity, finite, plus_infinity };
  Kind kind = Kind::finite;
  Scalar value;
  std::string to_string() const;
};

struct LhospitalOptions {
  unsigned max_order = 16;
  double zero_threshold = 1e-12;
  ScalarMode mode = ScalarMode::automatic;
};

/// Limit of f/g as x -> a from the right where f(a) = g(a) = 0.
LimitValue lhospital(const FuncExpr& f, const FuncExpr& g, const Scalar& a,
                     const LhospitalOptions& opts = {});

/// Whether f maps both p + 1/W and p - 1/W into the monad of f(p), computed
/// exactly in the hyperreal field. f must be rational-only.
bool microcontinuity_probe(const FuncExpr& f, const Rational& p);

}  // namespace hypercalc
