#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypercalc/hyper_rat.hpp"

namespace hypercalc {

/// One growth term base^W * body.
struct GrowthTerm {
  Rational base;  // > 0
  HyperRat body;  // != 0
  friend bool operator==(const GrowthTerm&, const GrowthTerm&) = default;
};

/// Finite sum of geometric growth terms r^W * (rational function of W).
/// Terms have distinct positive bases, sorted by descending base, and no
/// zero bodies. The base-1 term is the purely rational part.
class HyperExp {
 public:
  HyperExp() = default;
  HyperExp(const HyperRat& rational);
  HyperExp(const Rational& c) : HyperExp(HyperRat(c)) {}
  HyperExp(int c) : HyperExp(HyperRat(c)) {}

  /// base^W; base must be positive.
  static HyperExp geometric(const Rational& base);
  static HyperExp from_terms(std::vector<GrowthTerm> terms);

  const std::vector<GrowthTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// The element when it has no geometric part.
  std::optional<HyperRat> as_rational() const;
  /// Body of the base-1 term (zero when absent).
  HyperRat rational_part() const;
  /// Term with the largest base; requires a nonzero element.
  const GrowthTerm& dominant() const { return terms_.front(); }
  int sign() const { return terms_.empty() ? 0 : terms_.front().body.sign(); }

  HyperExp operator-() const;
  friend HyperExp operator+(const HyperExp& a, const HyperExp& b);
  friend HyperExp operator-(const HyperExp& a, const HyperExp& b) { return a + (-b); }
  friend HyperExp operator*(const HyperExp& a, const HyperExp& b);
  /// Division is only defined by a single-term divisor.
  friend HyperExp operator/(const HyperExp& a, const HyperExp& b);
  friend bool operator==(const HyperExp&, const HyperExp&) = default;

  std::string to_string() const;

 private:
  std::vector<GrowthTerm> terms_;
};

enum class GrowthOp { add, mul };
HyperExp growth_arith(GrowthOp op, const HyperExp& a, const HyperExp& b);

Order compare(const HyperExp& a, const HyperExp& b);
Classification classify(const HyperExp& a);
/// Throws `infinite_argument` for infinite elements.
Rational standard_part(const HyperExp& a);

struct GrowthSummary {
  Classification classification;
  Rational standard_part;
};
/// Classification and standard part together; throws `infinite_argument`
/// when the element is infinite.
GrowthSummary growth_classify_st(const HyperExp& a);

}  // namespace hypercalc
