#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace hypercalc::filters {

using Subset = std::uint32_t;  // bit i set <=> element i is a member

inline constexpr unsigned kMaxUniverse = 24;

/// A family of subsets of the finite universe {0, ..., universe_size - 1}.
/// Members are kept sorted and deduplicated.
class FiniteFamily {
 public:
  FiniteFamily(unsigned universe_size, std::vector<Subset> members);

  unsigned universe_size() const { return size_; }
  Subset universe() const { return size_ == 32 ? ~Subset{0} : ((Subset{1} << size_) - 1); }
  const std::vector<Subset>& members() const { return members_; }
  bool contains(Subset s) const;
  std::size_t count() const { return members_.size(); }

  friend bool operator==(const FiniteFamily&, const FiniteFamily&) = default;

 private:
  unsigned size_;
  std::vector<Subset> members_;
};

bool is_filter(const FiniteFamily& fam);
bool is_ultrafilter(const FiniteFamily& fam);

/// All supersets of `generator`. Throws `empty_set` when it is empty.
FiniteFamily principal_filter(unsigned universe_size, Subset generator);

/// Smallest filter containing `base`: supersets of all finite intersections.
/// Throws `fip_violation` when some finite intersection is empty.
FiniteFamily generate_from_base(unsigned universe_size, const FiniteFamily& base);

/// Greedy extension to an ultrafilter, adjoining A or its complement for
/// each subset A in ascending bitmask order. Throws `not_a_filter`.
FiniteFamily extend_to_ultrafilter(const FiniteFamily& fam);

/// A subset of the naturals that is either finite or cofinite.
class CofiniteSet {
 public:
  enum class Polarity { finite, finite_complement };

  CofiniteSet(Polarity polarity, std::set<std::uint64_t> exceptions)
      : polarity_(polarity), exceptions_(std::move(exceptions)) {}

  static CofiniteSet cofinite(std::set<std::uint64_t> missing) {
    return {Polarity::finite_complement, std::move(missing)};
  }
  static CofiniteSet finite(std::set<std::uint64_t> elements) {
    return {Polarity::finite, std::move(elements)};
  }
  /// A set described by its eventual membership on the even and odd
  /// indices plus explicit exceptions that flip membership. Only the
  /// finite/cofinite shapes are representable; a set that eventually
  /// contains exactly one parity class throws `not_representable`.
  static CofiniteSet from_parity_classes(bool evens_member, bool odds_member,
                                         const std::set<std::uint64_t>& flipped);

  Polarity polarity() const { return polarity_; }
  const std::set<std::uint64_t>& exceptions() const { return exceptions_; }
  bool contains(std::uint64_t n) const;

 private:
  Polarity polarity_;
  std::set<std::uint64_t> exceptions_;
};

/// Membership in the cofinite (Frechet) filter.
bool cofinite_contains(const CofiniteSet& s);

std::vector<unsigned> elements_of(Subset s);
std::string to_json(const FiniteFamily& fam);

}  // namespace hypercalc::filters
