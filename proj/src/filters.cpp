#include "hypercalc/filters.hpp"

#include <algorithm>
#include <bit>

#include <json.hpp>

#include "hypercalc/error.hpp"

namespace hypercalc::filters {

FiniteFamily::FiniteFamily(unsigned universe_size, std::vector<Subset> members)
    : size_(universe_size), members_(std::move(members)) {
  if (size_ < 1 || size_ > kMaxUniverse)
    throw Error(ErrorCode::invalid_argument, "universe size must be in 1..24");
  const Subset all = universe();
  for (Subset s : members_)
    if ((s & ~all) != 0)
      throw Error(ErrorCode::invalid_argument, "family member outside the universe");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool FiniteFamily::contains(Subset s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

namespace {

Subset total_intersection(const FiniteFamily& fam) {
  Subset g = fam.universe();
  for (Subset s : fam.members()) g &= s;
  return g;
}

std::vector<Subset> supersets(unsigned n, Subset generator) {
  const Subset all = (Subset{1} << n) - 1;
  const Subset free = all & ~generator;
  std::vector<Subset> out;
  out.reserve(std::size_t{1} << std::popcount(free));
  // enumerate subsets of `free` in ascending order
  Subset t = 0;
  do {
    out.push_back(generator | t);
    t = (t - free) & free;
  } while (t != 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_filter(const FiniteFamily& fam) {
  if (fam.members().empty() || fam.contains(0)) return false;
  const unsigned n = fam.universe_size();
  for (Subset s : fam.members()) {
    for (unsigned bit = 0; bit < n; ++bit) {
      const Subset up = s | (Subset{1} << bit);
      if (up != s && !fam.contains(up)) return false;
    }
  }
  // Upward closed: intersection-closed iff the total intersection is a member.
  return fam.contains(total_intersection(fam));
}

bool is_ultrafilter(const FiniteFamily& fam) {
  if (!is_filter(fam)) return false;
  const Subset all = fam.universe();
  for (Subset a = 0; a <= all; ++a) {
    if (fam.contains(a) == fam.contains(all & ~a)) return false;
    if (a == all) break;
  }
  return true;
}

FiniteFamily principal_filter(unsigned universe_size, Subset generator) {
  if (generator == 0) throw Error(ErrorCode::empty_set, "principal filter of the empty set");
  if (universe_size < 1 || universe_size > kMaxUniverse)
    throw Error(ErrorCode::invalid_argument, "universe size must be in 1..24");
  if ((generator >> universe_size) != 0)
    throw Error(ErrorCode::invalid_argument, "generator outside the universe");
  return FiniteFamily(universe_size, supersets(universe_size, generator));
}

FiniteFamily generate_from_base(unsigned universe_size, const FiniteFamily& base) {
  if (base.members().empty()) throw Error(ErrorCode::empty_set, "empty base family");
  if (base.universe_size() != universe_size)
    throw Error(ErrorCode::invalid_argument, "base family over a different universe");
  // Every finite intersection contains the total intersection, which is
  // itself a finite intersection; the generated filter is its upset.
  const Subset g = total_intersection(base);
  if (g == 0) throw Error(ErrorCode::fip_violation, "base lacks the finite intersection property");
  return principal_filter(universe_size, g);
}

FiniteFamily extend_to_ultrafilter(const FiniteFamily& fam) {
  if (!is_filter(fam)) throw Error(ErrorCode::not_a_filter, "input family is not a filter");
  const Subset all = fam.universe();
  Subset g = total_intersection(fam);  // fam == upset(g)
  for (Subset a = 1; a < all; ++a) {
    const bool has_a = (a & g) == g;
    const bool has_complement = ((all & ~a) & g) == g;
    if (has_a || has_complement) continue;
    g = (g & a) != 0 ? (g & a) : (g & ~a);
  }
  return principal_filter(fam.universe_size(), g);
}

CofiniteSet CofiniteSet::from_parity_classes(bool evens_member, bool odds_member,
                                             const std::set<std::uint64_t>& flipped) {
  if (evens_member && odds_member) return cofinite(flipped);
  if (!evens_member && !odds_member) return finite(flipped);
  throw Error(ErrorCode::not_representable,
              std::string("the ") + (evens_member ? "even" : "odd") +
                  " indices are neither finite nor cofinite");
}

bool CofiniteSet::contains(std::uint64_t n) const {
  const bool listed = exceptions_.count(n) != 0;
  return polarity_ == Polarity::finite_complement ? !listed : listed;
}

bool cofinite_contains(const CofiniteSet& s) {
  return s.polarity() == CofiniteSet::Polarity::finite_complement;
}

std::vector<unsigned> elements_of(Subset s) {
  std::vector<unsigned> out;
  for (unsigned i = 0; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

std::string to_json(const FiniteFamily& fam) {
  std::vector<std::vector<unsigned>> rows;
  rows.reserve(fam.members().size());
  for (Subset s : fam.members()) rows.push_back(elements_of(s));
  std::sort(rows.begin(), rows.end());
  return nlohmann::json(rows).dump();
}

}  // namespace hypercalc::filters
