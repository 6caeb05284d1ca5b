#include "zsl/zerosum.hpp"

#include "zsl/errors.hpp"
#include "zsl/kernels.hpp"

namespace zsl {

using kernel::GroupOps;
using kernel::Item;

namespace {

GroupMultiset from_counts(const GroupSpec& spec, const std::vector<Item>& items, const auto& counts) {
  GroupMultiset out(spec);
  for (std::size_t i = 0; i < items.size(); ++i)
    if (counts[i]) out.add(items[i].elem, counts[i]);
  return out;
}

}  // namespace

std::optional<ZerosumCertificate> find_zerosum(const GroupMultiset& a, const ZerosumQuery& q) {
  if (q.min_len && q.max_len && *q.min_len > *q.max_len)
    throw std::invalid_argument("find_zerosum: min_len > max_len");
  if (q.target && !(q.target->spec() == a.spec())) throw SpecMismatch("find_zerosum: target from another group");
  GroupOps ops(a.spec());
  auto items = kernel::items_of(a);
  if (q.distinct_only)
    for (auto& it : items) it.mult = 1;
  const std::uint64_t n = kernel::total_size(items);
  const std::uint32_t lo = std::max<std::uint32_t>(1, q.min_len.value_or(1));
  const std::uint32_t hi = static_cast<std::uint32_t>(std::min<std::uint64_t>(q.max_len.value_or(n), n));
  if (lo > hi) return std::nullopt;
  const ElemIndex target = q.target ? q.target->index() : 0;
  auto pick = kernel::shortest_selection(ops, items, target, lo, hi);
  if (!pick) return std::nullopt;
  return ZerosumCertificate{from_counts(a.spec(), items, *pick)};
}

std::optional<std::uint32_t> min_zerosum_length(const GroupMultiset& a) {
  GroupOps ops(a.spec());
  auto items = kernel::items_of(a);
  return kernel::min_zerosum_len(ops, items, static_cast<std::uint32_t>(a.size()));
}

std::optional<std::uint32_t> max_zerosum_length(const GroupMultiset& a) {
  GroupOps ops(a.spec());
  auto items = kernel::items_of(a);
  return kernel::max_zerosum_len(ops, items);
}

PackingResult max_disjoint_zerosums(const GroupMultiset& a) {
  if (a.size() > kMaxPackingSize)
    throw BudgetExceeded("max_disjoint_zerosums: |A| = " + std::to_string(a.size()) + " exceeds 40");
  PackingResult res;
  if (a.empty()) return res;
  GroupOps ops(a.spec());
  kernel::PackingSolver solver(ops, kernel::items_of(a));
  for (auto& part : solver.optimal_parts()) res.parts.push_back({from_counts(a.spec(), solver.items(), part)});
  res.count = static_cast<std::uint32_t>(res.parts.size());
  return res;
}

std::vector<GroupElement> representable_sums(const GroupMultiset& a, std::uint32_t max_picks) {
  GroupOps ops(a.spec());
  auto items = kernel::items_of(a);
  auto mask = kernel::representable(ops, items, max_picks);
  std::vector<GroupElement> out;
  for (ElemIndex g = 0; g < mask.size(); ++g)
    if (mask[g]) out.push_back(a.spec().element(g));
  return out;
}

std::vector<GroupMultiset> all_zerosum_subsets(const GroupMultiset& a) {
  if (a.size() > kMaxAllSubsetsSize)
    throw BudgetExceeded("all_zerosum_subsets: |A| = " + std::to_string(a.size()) + " exceeds 16");
  const GroupSpec& spec = a.spec();
  auto items = kernel::items_of(a);
  const std::size_t n = items.size();
  std::vector<std::uint32_t> counts(n, 0);
  std::vector<GroupMultiset> out;
  ElemIndex sum = 0;
  // odometer over count vectors, tracking the running sum
  for (;;) {
    std::size_t i = 0;
    while (i < n && counts[i] == items[i].mult) {
      sum = spec.add(sum, spec.neg(spec.scale(items[i].elem, counts[i])));
      counts[i] = 0;
      ++i;
    }
    if (i == n) break;
    ++counts[i];
    sum = spec.add(sum, items[i].elem);
    if (sum == 0) out.push_back(from_counts(spec, items, counts));
  }
  return out;
}

}  // namespace zsl
