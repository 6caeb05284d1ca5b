#pragma once

// GL(r, p) acting on multisets over F_p^r: enumeration, canonical forms and
// orbit deduplication. Canonical representatives minimise the multiplicity
// vector (indexed by element index) lexicographically over the whole orbit.

#include <cstdint>
#include <span>
#include <vector>

#include "zsl/group.hpp"

namespace zsl {

/// r x r matrix over F_p, row-major. Acts on column vectors of coordinates.
struct LinearMap {
  std::uint32_t p = 0;
  std::size_t r = 0;
  std::vector<std::uint32_t> m;

  std::uint32_t at(std::size_t i, std::size_t j) const { return m[i * r + j]; }
  static LinearMap identity(std::size_t r, std::uint32_t p);
  /// Image of an element index of F_p^r.
  ElemIndex apply(const GroupSpec& spec, ElemIndex x) const;
  std::uint32_t det() const;
  bool operator==(const LinearMap&) const = default;
};

/// |GL(r, p)|; throws BudgetExceeded if it does not fit in 64 bits.
std::uint64_t gl_order(std::size_t r, std::uint32_t p);

inline constexpr std::uint64_t kMaxSymmetryOrder = 4096;
inline constexpr std::uint64_t kMaxGlEnumeration = 2'000'000;

/// Every invertible matrix exactly once. Guards: p^r <= 4096 and
/// |GL(r,p)| <= 2e6 (BudgetExceeded otherwise).
std::vector<LinearMap> enumerate_gl(std::size_t r, std::uint32_t p);

/// Throws SpecMismatch unless the group is F_p^r matching the map.
GroupMultiset apply_map(const LinearMap& m, const GroupMultiset& a);

/// Uniformly random invertible map (rejection sampling on the determinant).
template <class Rng>
LinearMap random_gl(std::size_t r, std::uint32_t p, Rng& rng) {
  LinearMap out{p, r, std::vector<std::uint32_t>(r * r)};
  do {
    for (auto& x : out.m) x = static_cast<std::uint32_t>(rng() % p);
  } while (out.det() == 0);
  return out;
}

struct CanonicalForm {
  GroupMultiset representative;
  std::uint64_t stabilizer_size = 1;

  /// |GL| / stabilizer for elementary groups, 1 otherwise.
  std::uint64_t orbit_size() const;
};

/// Canonicalisation on dense multiplicity vectors. Elementary groups of order
/// <= 4096 use GL(r,p); any other group gets the trivial action (rep = input).
///
/// The minimum is found by choosing the preimages of e_{r-1}, e_{r-2}, ... in
/// turn: after fixing the preimage of e_{r-l} every position below p^l is
/// determined, so only partial maps with the least segment survive.
class Canonizer {
 public:
  static constexpr std::uint64_t kMaxCandidates = 4'000'000;

  explicit Canonizer(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }
  bool trivial() const { return prime_ == 0; }
  std::uint64_t group_order() const { return gl_order_; }

  struct Result {
    std::vector<std::uint32_t> rep;
    std::uint64_t stabilizer = 1;
  };
  /// mult has length order(). Throws BudgetExceeded when too many partial
  /// maps tie.
  Result canon(std::span<const std::uint32_t> mult) const;

 private:
  ElemIndex add(ElemIndex a, ElemIndex b) const {
    return table_.empty() ? spec_.add(a, b) : table_[a * spec_.order() + b];
  }

  GroupSpec spec_;
  std::vector<std::uint16_t> table_;  // addition table for order <= 256
  std::uint32_t prime_ = 0;
  std::size_t rank_ = 0;
  std::uint64_t gl_order_ = 1;
};

std::vector<std::uint32_t> dense_counts(const GroupMultiset& a);
GroupMultiset from_dense(const GroupSpec& spec, std::span<const std::uint32_t> counts);

CanonicalForm canonical_form(const GroupMultiset& a);
/// Full scan over enumerate_gl with early-exit comparison. Test/bench oracle.
CanonicalForm canonical_form_reference(const GroupMultiset& a);

struct OrbitClass {
  CanonicalForm form;
  std::uint64_t occurrences = 0;  // inputs falling in this orbit
};

/// One entry per orbit met, sorted by representative. Parallel over inputs
/// (OpenMP); the result does not depend on the thread count.
std::vector<OrbitClass> orbit_dedupe(const std::vector<GroupMultiset>& sets);
std::vector<OrbitClass> orbit_dedupe_serial(const std::vector<GroupMultiset>& sets);

}  // namespace zsl
