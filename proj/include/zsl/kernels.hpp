#pragma once

// Index-level kernels behind the zero-sum engine and the searches. A multiset
// is passed as a span of (element, multiplicity) items sorted by element
// index with positive multiplicities. Sets of group elements are bitsets; the
// implementation switches to a single machine word when the order is <= 64.

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "zsl/group.hpp"

namespace zsl::kernel {

struct Item {
  ElemIndex elem;
  std::uint32_t mult;
};

/// Largest group order the DP kernels accept.
inline constexpr std::uint64_t kMaxKernelOrder = 1u << 16;

/// Addition with a lookup table for small groups.
class GroupOps {
 public:
  /// Throws BudgetExceeded above kMaxKernelOrder.
  explicit GroupOps(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }
  std::uint32_t order() const { return order_; }
  ElemIndex add(ElemIndex a, ElemIndex b) const {
    return table_.empty() ? spec_.add(a, b) : table_[std::size_t{a} * order_ + b];
  }
  ElemIndex neg(ElemIndex a) const { return neg_[a]; }
  ElemIndex scale(ElemIndex a, std::uint64_t k) const { return spec_.scale(a, k); }
  std::uint32_t order_of(ElemIndex a) const { return ord_[a]; }

 private:
  GroupSpec spec_;
  std::uint32_t order_;
  std::vector<std::uint16_t> table_;
  std::vector<ElemIndex> neg_;
  std::vector<std::uint32_t> ord_;
};

std::vector<Item> items_of(const GroupMultiset& a);
std::uint64_t total_size(std::span<const Item> items);

/// Shortest selection (0 <= c_i <= mult_i, sum c_i in [min_len, max_len]) whose
/// sum is `target`. Among the shortest, returns the one whose sorted element
/// sequence is lexicographically least. Result holds c_i per item.
std::optional<std::vector<std::uint32_t>> shortest_selection(const GroupOps& ops, std::span<const Item> items,
                                                             ElemIndex target, std::uint32_t min_len,
                                                             std::uint32_t max_len);

/// Length of the shortest non-empty zero-sum of length <= cap, if any.
std::optional<std::uint32_t> min_zerosum_len(const GroupOps& ops, std::span<const Item> items,
                                             std::uint32_t cap);
/// True when some non-empty zero-sum of length <= k exists.
bool has_zerosum_up_to(const GroupOps& ops, std::span<const Item> items, std::uint32_t k);
/// Longest zero-sum via the complement of the shortest removal with sum = sum(A).
std::optional<std::uint32_t> max_zerosum_len(const GroupOps& ops, std::span<const Item> items);
/// Membership vector over the group: sums of at most max_picks elements.
std::vector<bool> representable(const GroupOps& ops, std::span<const Item> items, std::uint32_t max_picks);

/// Minimal zero-sum sub-multisets as per-item count vectors. Throws
/// BudgetExceeded when more than `limit` exist.
std::vector<std::vector<std::uint8_t>> minimal_zerosums(const GroupOps& ops, std::span<const Item> items,
                                                        std::size_t limit = 20'000'000);

/// Maximum number of pairwise disjoint non-empty zero-sum sub-multisets.
///
/// Branches on the first item still present: either one copy of it is left
/// unused, or it lies in a minimal zero-sum part (any packing refines to one
/// with minimal parts). Memoized on the remaining multiplicities.
class PackingSolver {
 public:
  PackingSolver(const GroupOps& ops, std::vector<Item> items);

  std::uint32_t max_packing();
  /// True iff at least k disjoint zero-sums exist. Stops as soon as k is reached.
  bool at_least(std::uint32_t k);
  /// Parts of an optimal packing (count vectors over items).
  std::vector<std::vector<std::uint8_t>> optimal_parts();

  const std::vector<Item>& items() const { return items_; }
  std::size_t minimal_count() const { return minimal_.size(); }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t key(const std::vector<std::uint8_t>& r) const;
  std::uint32_t solve(std::vector<std::uint8_t>& r, std::uint32_t size);
  bool reach(std::vector<std::uint8_t>& r, std::uint32_t size, std::uint32_t need);

  const GroupOps& ops_;
  std::vector<Item> items_;
  std::vector<std::vector<std::uint8_t>> minimal_;
  std::vector<std::uint8_t> minimal_len_;
  std::vector<std::vector<std::uint32_t>> containing_;  // item -> minimal zero-sums whose first item it is
  std::vector<std::uint64_t> radix_;
  std::uint32_t shortest_ = 1;
  std::unordered_map<std::uint64_t, std::uint32_t> memo_;
  std::unordered_map<std::uint64_t, std::uint32_t> fail_;  // state -> smallest need proven unreachable
  std::uint64_t nodes_ = 0;
};

}  // namespace zsl::kernel
