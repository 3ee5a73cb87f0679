#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypercalc/integral.hpp"

namespace hypercalc {

/// Interval function B(x, y), meant to be additive: B(u, w) = B(u, v) + B(v, w).
struct AdditiveFn {
  std::string name;
  std::function<Rational(const Rational&, const Rational&)> exact;
  bool declared_rectangular = false;
};

/// B(x, y) = F(y) - F(x) for a polynomial F.
AdditiveFn antiderivative_difference(const Polynomial& antiderivative);

struct CellResidual {
  Rational left;
  Rational right;
  Rational ratio;     // B(left, right) / width
  Rational residual;  // min over sampled p of |ratio - f(p)|
  bool rectangular = false;
};

struct AdmissibilityLevel {
  Rational delta;
  std::vector<CellResidual> cells;
  Rational max_residual;
  std::uint64_t nonzero_cells = 0;
  bool rectangular = false;  // every cell satisfies m*w <= B <= M*w
};

struct AdmissibilityReport {
  std::vector<AdmissibilityLevel> levels;  // delta, delta/2, delta/4, ...
  /// Each halving at least halves the largest residual; zero stays zero.
  bool residual_halving = false;
  bool rectangular = false;  // every cell at every level
  Rational total;            // B(a, b)
  IntegralResult integral;
  double discrepancy = 0;    // |B(a, b) - integral|
  bool matches_integral = false;  // discrepancy <= gap
};

/// Finite-scale admissibility evidence: cell residuals of B against f under
/// successive halvings of delta, the rectangular property on every cell and
/// the agreement of B(a, b) with the integral. Throws `additivity_violation`
/// when B is not additive on the partition.
AdmissibilityReport admissibility_check(const AdditiveFn& B, const Integrand& f, const Rational& a,
                                        const Rational& b, const Rational& delta, unsigned halvings = 6,
                                        const IntegralOptions& opts = {});

}  // namespace hypercalc
