#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypercalc/error.hpp"
#include "hypercalc/exp_poly.hpp"
#include "hypercalc/expr.hpp"
#include "hypercalc/hyper_exp.hpp"
#include "hypercalc/hyper_rat.hpp"

namespace hypercalc {

/// Normal form of a sequence: one exponential-polynomial quotient per parity
/// class, valid at every index outside `exceptions` (patched indices and
/// indices where a cancelled or intermediate denominator vanishes).
struct ParityForm {
  ExpQuotient even;
  ExpQuotient odd;
  std::set<std::uint64_t> exceptions;

  const ExpQuotient& cls(unsigned parity) const { return parity % 2 == 0 ? even : odd; }
};

ParityForm normalize(const SeqExpr& s);

/// Pointwise value S(n); nullopt where a division by zero occurs.
std::optional<Rational> evaluate_at(const SeqExpr& s, std::uint64_t n);

/// The sequence n -> S(n + 1).
SeqExpr shift_index(const SeqExpr& s);

enum class Relation { equal, less, greater, ultrafilter_dependent };
std::string_view to_string(Relation r) noexcept;

struct FrechetVerdict {
  Relation relation = Relation::equal;
  /// Every index >= exception_bound agrees with the per-class relations.
  std::uint64_t exception_bound = 0;
  Relation even = Relation::equal;
  Relation odd = Relation::equal;

  bool decisive() const { return relation != Relation::ultrafilter_dependent; }
};

FrechetVerdict frechet_compare(const SeqExpr& a, const SeqExpr& b);

/// Index beyond which |S(n) - target| < tol at every n; nullopt when that set
/// of indices is not cofinite.
std::optional<std::uint64_t> closeness_bound(const SeqExpr& s, const Rational& target,
                                             const Rational& tol);

using HyperImage = std::variant<HyperRat, HyperExp>;
std::string to_string(const HyperImage& h);

/// Raised when the even and odd classes name different field elements.
class UltrafilterDependence : public Error {
 public:
  UltrafilterDependence(std::string even, std::string odd)
      : Error(ErrorCode::ultrafilter_dependent,
              "value depends on the ultrafilter: even indices give " + even +
                  ", odd indices give " + odd),
        even_(std::move(even)), odd_(std::move(odd)) {}
  const std::string& even_candidate() const { return even_; }
  const std::string& odd_candidate() const { return odd_; }

 private:
  std::string even_;
  std::string odd_;
};

/// Field element for one parity class, when its denominator is a single term.
std::optional<HyperImage> class_image(const ExpQuotient& q);

HyperImage to_hyper(const SeqExpr& s);

struct ConvergenceReport {
  bool bounded = false;
  std::set<ExtendedValue> limit_points;
  std::optional<Rational> converges_to;
  std::optional<ExtendedValue> diverges_to;  // only +inf or -inf
  ExtendedValue liminf;
  ExtendedValue limsup;
  bool cauchy = false;
  ExtendedValue even_limit;
  ExtendedValue odd_limit;
};

ConvergenceReport analyze(const SeqExpr& s);

}  // namespace hypercalc
