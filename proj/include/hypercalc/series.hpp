#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypercalc/ultrapower.hpp"

namespace hypercalc {

/// Closed form of A(n) = sum_{k=0}^{n} a_k. Exponential-polynomial terms
/// (polynomials times r^k, signed r allowed) are summed in closed form; other
/// terms need an antidifference g with a_k = g(k+1) - g(k), which is verified
/// symbolically. Throws `no_closed_form` otherwise.
SeqExpr series_partial_sum(const SeqExpr& term,
                           const std::optional<SeqExpr>& antidifference = std::nullopt);

enum class SeriesVerdict { converges, diverges, inconclusive };
std::string_view to_string(SeriesVerdict v) noexcept;

struct SeriesReport {
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
  std::optional<Rational> value;
  std::optional<ExtendedValue> diverges_to;  // +inf / -inf; unset for oscillation
  /// closed_form, term_test, dyadic_blocks, dominance or none
  std::string method = "none";
  std::optional<SeqExpr> partial_sum;
  /// Standard part of the lower bound 2^n a(2^{n+1}) on a dyadic block.
  std::optional<Rational> block_floor;
  /// Geometric ratio of the upper bound 2^n a(2^n) on a dyadic block.
  std::optional<Rational> block_ratio;
};

SeriesReport series_analyze(const SeqExpr& term,
                            const std::optional<SeqExpr>& antidifference = std::nullopt);

/// Dyadic condensation 2^n * a(2^n), valid for n >= 1.
SeqExpr dyadic_condensation(const SeqExpr& term);

struct CauchyProductReport {
  Rational sum_a;
  Rational sum_b;
  Rational target;   // sum_a * sum_b
  Rational partial;  // C(N)
  double error = 0;  // |C(N) - target|
  std::vector<std::pair<std::uint64_t, double>> trend;  // (n, |C(n) - target|)
  bool nonincreasing = false;
};

/// Partial sums of the Cauchy product up to N compared with the product of
/// the two sums. Throws `unknown_sum` when either sum is not known exactly.
CauchyProductReport cauchy_product_check(const SeqExpr& a, const SeqExpr& b, std::uint64_t n);

}  // namespace hypercalc
