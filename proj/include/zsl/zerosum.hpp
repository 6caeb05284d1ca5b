#pragma once

// Zero-sum detection over a GroupMultiset: shortest/longest zero-sums, maximum
// packings of disjoint zero-sums, bounded representability.

#include <cstdint>
#include <optional>
#include <vector>

#include "zsl/group.hpp"

namespace zsl {

struct ZerosumQuery {
  std::optional<GroupElement> target;  // identity when absent
  std::optional<std::uint32_t> min_len;
  std::optional<std::uint32_t> max_len;
  bool distinct_only = false;  // use each element at most once
};

struct PackingResult {
  std::uint32_t count = 0;
  std::vector<ZerosumCertificate> parts;
};

/// Shortest non-empty selection with the requested sum and length. Ties go to
/// the lexicographically least sorted index sequence.
std::optional<ZerosumCertificate> find_zerosum(const GroupMultiset& a, const ZerosumQuery& q = {});

std::optional<std::uint32_t> min_zerosum_length(const GroupMultiset& a);
std::optional<std::uint32_t> max_zerosum_length(const GroupMultiset& a);

inline constexpr std::uint64_t kMaxPackingSize = 40;
/// Exact maximum packing. Throws BudgetExceeded when |A| > 40.
PackingResult max_disjoint_zerosums(const GroupMultiset& a);

/// Elements that are sums of at most max_picks elements of A, sorted by index.
std::vector<GroupElement> representable_sums(const GroupMultiset& a, std::uint32_t max_picks);

inline constexpr std::uint64_t kMaxAllSubsetsSize = 16;
/// Every non-empty zero-sum sub-multiset, in mixed-radix order. Throws
/// BudgetExceeded when |A| > 16.
std::vector<GroupMultiset> all_zerosum_subsets(const GroupMultiset& a);

}  // namespace zsl
