#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypercalc/expr.hpp"
#include "hypercalc/hyper_rat.hpp"

namespace hypercalc {

/// Points x_k = a + k*delta for k <= n and x_{n+1} = b, where n is the
/// largest natural with a + n*delta <= b. The last cell may be degenerate.
struct SimplePartition {
  Rational a;
  Rational b;
  Rational delta;
  std::uint64_t n = 0;

  /// x_k for k in 0..n+1.
  Rational point(std::uint64_t k) const { return k > n ? b : a + delta * Rational(static_cast<unsigned long>(k)); }
  double point_double(std::uint64_t k) const;
  /// Number of cells including the possibly degenerate last one (n + 1).
  std::uint64_t cells() const { return n + 1; }
  Rational width(std::uint64_t i) const { return i + 1 <= n ? delta : b - point(n); }
};

SimplePartition build_partition(const Rational& a, const Rational& b, const Rational& delta);

enum class IntegrandKind { polynomial, monotone, general };
enum class Direction { increasing, decreasing };

struct PointPatch {
  Rational x;
  Rational value;
};

/// A real function on an interval together with the class that decides how
/// cell infima and suprema are obtained, plus finitely many point overrides.
class Integrand {
 public:
  using ExactFn = std::function<Rational(const Rational&)>;
  using FloatFn = std::function<double(double)>;

  /// Polynomial class when the expression is a polynomial, general otherwise.
  static Integrand from_expr(const FuncExpr& f);
  /// Asserted monotone; the assertion is checked at every partition point used.
  static Integrand monotone(const FuncExpr& f, Direction dir);
  /// Arbitrary evaluator pair; `exact` may be empty.
  static Integrand custom(std::string name, ExactFn exact, FloatFn approx, IntegrandKind kind,
                          Direction dir = Direction::increasing);

  Integrand with_patches(std::vector<PointPatch> patches) const;

  IntegrandKind kind() const { return kind_; }
  Direction direction() const { return dir_; }
  const std::optional<Polynomial>& polynomial() const { return poly_; }
  const std::string& name() const { return name_; }
  const std::vector<PointPatch>& patches() const { return patches_; }
  bool has_exact() const { return static_cast<bool>(exact_); }

  /// Values of the unpatched function.
  Rational base_exact(const Rational& x) const;
  double base_float(double x) const { return approx_(x); }
  /// Values including point patches.
  Rational value_exact(const Rational& x) const;
  double value_float(double x) const;

 private:
  std::string name_;
  IntegrandKind kind_ = IntegrandKind::general;
  Direction dir_ = Direction::increasing;
  std::optional<Polynomial> poly_;
  ExactFn exact_;
  FloatFn approx_;
  std::vector<PointPatch> patches_;
};

enum class Execution { serial, parallel };

template <class T>
struct Sums {
  T lower{};
  T upper{};
};

struct LowerUpper {
  Sums<double> approx;
  std::optional<Sums<Rational>> exact;
  bool sampled = false;  // general class: bounds from sampling, not certified
  std::uint64_t cells = 0;
};

enum class ExactPolicy { prefer, require, never };

/// Lower and upper sums over a simple partition. Exact when the integrand
/// has an exact evaluator and is polynomial or monotone; `require` raises
/// `unverifiable_bounds` otherwise.
LowerUpper lower_upper_sums(const Integrand& f, const SimplePartition& p,
                            Execution exec = Execution::parallel, ExactPolicy policy = ExactPolicy::prefer);

struct SymbolicIntegral {
  Rational value;
  HyperRat left_sum;       // sum_{k < L} f(a + k dx) dx, dx = (b - a)/L, L = scale*W
  Rational slope_bound;    // bound on |f'| over [a, b]
  std::string certificate;
};

/// Standard part of the left hyperfinite sum of a polynomial over [a, b].
SymbolicIntegral symbolic_integral_polynomial(const Polynomial& f, const Rational& a, const Rational& b,
                                              unsigned long scale = 1);

enum class IntegralTag { exact, certified, sampled };
std::string_view to_string(IntegralTag t) noexcept;

struct IntegralOptions {
  double tol = 1e-6;  // relative to max(1, |value|)
  std::uint64_t max_cells = std::uint64_t{1} << 22;
  bool symbolic = true;  // polynomial class uses the symbolic path
  Execution exec = Execution::parallel;
};

struct IntegralResult {
  double value = 0;                        // midpoint of the bracket unless exact
  std::optional<Rational> exact_value;     // only when the integral itself is known exactly
  std::optional<Sums<Rational>> exact_bounds;  // exact lower/upper sums bracketing it
  IntegralTag tag = IntegralTag::exact;
  double gap = 0;
  std::optional<Rational> exact_gap;
  std::uint64_t cells = 0;
  std::string mode;  // symbolic | monotone | refine
  std::string certificate;
};

IntegralResult integrate(const Integrand& f, const Rational& a, const Rational& b,
                         const IntegralOptions& opts = {});

struct AccumulationPoint {
  Rational y;
  IntegralResult value;    // F(y) = integral from a to y
  std::optional<double> residual;  // |(F(y+h) - F(y-h))/(2h) - f(y)| at interior points
};

struct AccumulationReport {
  std::vector<AccumulationPoint> points;
  bool additive = false;       // F(c) + int_c^y = F(y) within certificates, all grid pairs
  bool exact_additivity = false;
  double max_residual = 0;
  bool within_tol = false;
};

AccumulationReport accumulation_check(const Integrand& f, const Rational& a, const Rational& b,
                                      std::vector<Rational> grid, double tol,
                                      const IntegralOptions& opts = {});

struct ModificationLevel {
  Rational delta;
  double lower_diff = 0;  // |L(g) - L(f)|
  double upper_diff = 0;  // |U(g) - U(f)|
  double bound = 0;       // 2 * #points * oscillation * delta
};

struct ModificationReport {
  std::vector<ModificationLevel> levels;
  double integral_f = 0;
  double integral_g = 0;
  bool bound_respected = false;
  bool within_tol = false;
  bool ok() const { return bound_respected && within_tol; }
};

/// g equals f except at finitely many points. Tracks how the lower/upper
/// sums of g and f separate across refinements.
ModificationReport finite_modification_check(const Integrand& f, const std::vector<PointPatch>& points,
                                             const Rational& a, const Rational& b, double tol,
                                             const IntegralOptions& opts = {});

/// Cell infimum/supremum engine for one integrand on [a, b].
class CellBounds {
 public:
  CellBounds(const Integrand& f, const Rational& a, const Rational& b);
  bool exact_capable() const { return exact_ok_; }
  bool sampled() const { return f_.kind() == IntegrandKind::general; }
  std::pair<Rational, Rational> exact(const Rational& l, const Rational& r) const;
  std::pair<double, double> approx(double l, double r) const;
  /// Bounds including point patches inside [l, r].
  std::pair<Rational, Rational> exact_patched(const Rational& l, const Rational& r) const;
  std::pair<double, double> approx_patched(double l, double r) const;
  const Integrand& integrand() const { return f_; }

 private:
  struct Bracket {
    Rational lo, hi;
  };
  const Integrand& f_;
  bool exact_ok_ = false;
  std::vector<Bracket> brackets_;  // isolate sign changes of f' (polynomial class)
  Rational slope_bound_;
};

}  // namespace hypercalc
