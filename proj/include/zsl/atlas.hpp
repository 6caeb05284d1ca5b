#pragma once

// Classification checks over Z_3^3: distinct sets without short zero-sums,
// the five-point lemma, 14-element multisets without zero-sums of length
// <= 3 or >= 12, and the size-(3k+5) family for D_k.

#include <cstdint>
#include <optional>
#include <vector>

#include "zsl/group.hpp"
#include "zsl/search.hpp"
#include "zsl/symmetry.hpp"

namespace zsl {

/// Orbits of `size`-element distinct sets with no zero-sum of length <= 3.
std::vector<CanonicalForm> classify_distinct_sets(std::uint32_t size, const SearchOptions& opt = {});

/// True when A has distinct x, y, z with x + y = z.
bool has_sum_triple(const GroupMultiset& a);

struct FivePointReport {
  std::uint64_t sets_checked = 0;
  std::vector<GroupMultiset> violators;  // no zero-sum of length <= 3 and no x+y=z
};
/// Every 5-element subset of Z_3^3.
FivePointReport check_five_point_lemma();

/// Orbits of 14-element multisets with no zero-sum of length <= 3 and, unless
/// relaxed, none of length >= 12.
std::vector<CanonicalForm> classify_14_point(bool relaxed = false, const SearchOptions& opt = {});

struct FamilyRecipe {
  GroupMultiset base{GroupSpec({1})};  // 7 distinct points b_1..b_7 (sorted by index)
  std::vector<std::uint32_t> kappas;   // kappa_i >= 0, sum k - 3
  GroupMultiset assembled{GroupSpec({1})};  // base doubled plus b_i^(3 kappa_i)
};

/// Base sets: orbit representatives of 7-point distinct sets with no zero-sum
/// of length <= 3 whose doubling has no zero-sum of length >= 12.
std::vector<CanonicalForm> family_bases();
/// Recipes whose assembled multiset has fewer than k disjoint zero-sums, one
/// per orbit of assembled multisets. k >= 3.
std::vector<FamilyRecipe> build_3k5_family(std::uint32_t k);

struct CompletenessReport {
  std::uint32_t k = 0;
  std::uint32_t threshold = 0;   // packing bound used (< threshold disjoint zero-sums)
  std::uint32_t size = 0;        // 3k + 5
  std::uint64_t found_orbits = 0;
  std::uint64_t recipe_orbits = 0;
  bool via_constant = false;     // settled by D_threshold <= size
  std::optional<std::uint32_t> constant_value;
  std::vector<GroupMultiset> unmatched;  // found but not assembled from a recipe
  bool complete() const { return unmatched.empty(); }
};
/// Multisets of size 3k+5 with fewer than `threshold` (default k) disjoint
/// zero-sums, compared against build_3k5_family(k) up to linear equivalence.
CompletenessReport verify_3k5_completeness(std::uint32_t k, std::optional<std::uint32_t> threshold = std::nullopt,
                                           const SearchOptions& opt = {}, ResultMemo* memo = nullptr);

}  // namespace zsl
