#include "zsl/kernels.hpp"

#include <algorithm>
#include <bit>

#include "zsl/errors.hpp"

namespace zsl::kernel {

GroupOps::GroupOps(GroupSpec spec) : spec_(std::move(spec)) {
  if (spec_.order() > kMaxKernelOrder)
    throw BudgetExceeded("group order " + std::to_string(spec_.order()) + " exceeds kernel limit");
  order_ = static_cast<std::uint32_t>(spec_.order());
  if (order_ <= 256) {
    table_.resize(std::size_t{order_} * order_);
    for (ElemIndex a = 0; a < order_; ++a)
      for (ElemIndex b = 0; b < order_; ++b) table_[std::size_t{a} * order_ + b] = static_cast<std::uint16_t>(spec_.add(a, b));
  }
  neg_.resize(order_);
  ord_.resize(order_);
  for (ElemIndex a = 0; a < order_; ++a) {
    neg_[a] = spec_.neg(a);
    ord_[a] = spec_.order_of(a);
  }
}

std::vector<Item> items_of(const GroupMultiset& a) {
  std::vector<Item> out;
  for (auto [e, c] : a.entries()) out.push_back({e, c});
  return out;
}

std::uint64_t total_size(std::span<const Item> items) {
  std::uint64_t n = 0;
  for (auto& it : items) n += it.mult;
  return n;
}

namespace {

// Subset of a group of order <= 64.
struct Mask64 {
  std::uint64_t bits = 0;

  explicit Mask64(std::uint32_t /*order*/) {}
  void set(ElemIndex i) { bits |= std::uint64_t{1} << i; }
  bool test(ElemIndex i) const { return (bits >> i) & 1u; }
  bool empty() const { return bits == 0; }
  Mask64& operator|=(const Mask64& o) {
    bits |= o.bits;
    return *this;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits; b; b &= b - 1) f(static_cast<ElemIndex>(std::countr_zero(b)));
  }
};

struct BitVec {
  std::vector<std::uint64_t> w;

  explicit BitVec(std::uint32_t order) : w((order + 63) / 64, 0) {}
  void set(ElemIndex i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(ElemIndex i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  bool empty() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  BitVec& operator|=(const BitVec& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    return *this;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < w.size(); ++k)
      for (std::uint64_t b = w[k]; b; b &= b - 1) f(static_cast<ElemIndex>(k * 64 + std::countr_zero(b)));
  }
};

template <class Set>
Set translated(const GroupOps& ops, const Set& s, ElemIndex x) {
  if (x == 0) return s;
  Set out(ops.order());
  s.for_each([&](ElemIndex g) { out.set(ops.add(g, x)); });
  return out;
}

template <class Set>
std::optional<std::vector<std::uint32_t>> shortest_selection_t(const GroupOps& ops, std::span<const Item> items,
                                                               ElemIndex target, std::uint32_t min_len,
                                                               std::uint32_t max_len) {
  const std::size_t n = items.size();
  const std::uint32_t total = static_cast<std::uint32_t>(std::min<std::uint64_t>(total_size(items), max_len));
  if (min_len > total) return std::nullopt;
  max_len = total;
  const std::uint32_t L = max_len + 1;
  // suf[i * L + len]: sums reachable with exactly len picks from items i..n-1
  std::vector<Set> suf((n + 1) * L, Set(ops.order()));
  suf[n * L + 0].set(0);
  for (std::size_t i = n; i-- > 0;) {
    const std::uint32_t cap = std::min(items[i].mult, max_len);
    ElemIndex shift = 0;
    for (std::uint32_t c = 0; c <= cap; ++c) {
      for (std::uint32_t len = c; len <= max_len; ++len) {
        const Set& src = suf[(i + 1) * L + (len - c)];
        if (src.empty()) continue;
        suf[i * L + len] |= translated(ops, src, shift);
      }
      shift = ops.add(shift, items[i].elem);
    }
  }
  for (std::uint32_t len = min_len; len <= max_len; ++len) {
    if (!suf[len].test(target)) continue;
    std::vector<std::uint32_t> pick(n, 0);
    ElemIndex t = target;
    std::uint32_t r = len;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t cap = std::min(items[i].mult, r);
      for (std::uint32_t c = cap + 1; c-- > 0;) {
        ElemIndex rest = ops.add(t, ops.neg(ops.scale(items[i].elem, c)));
        if (suf[(i + 1) * L + (r - c)].test(rest)) {
          pick[i] = c;
          t = rest;
          r -= c;
          break;
        }
      }
    }
    return pick;
  }
  return std::nullopt;
}

// dp[len]: sums of exactly len picks, len <= max_len, over all items.
template <class Set>
std::vector<Set> layered_sums(const GroupOps& ops, std::span<const Item> items, std::uint32_t max_len) {
  std::vector<Set> dp(max_len + 1, Set(ops.order()));
  dp[0].set(0);
  for (const auto& it : items) {
    std::vector<Set> next = dp;
    const std::uint32_t cap = std::min(it.mult, max_len);
    ElemIndex shift = 0;
    for (std::uint32_t c = 1; c <= cap; ++c) {
      shift = ops.add(shift, it.elem);
      for (std::uint32_t len = c; len <= max_len; ++len)
        if (!dp[len - c].empty()) next[len] |= translated(ops, dp[len - c], shift);
    }
    dp = std::move(next);
  }
  return dp;
}

// Any element with multiplicity >= its order yields ord(x) copies summing to 0.
std::uint32_t multiplicity_cap(const GroupOps& ops, std::span<const Item> items, std::uint32_t cap) {
  for (const auto& it : items) {
    std::uint32_t o = ops.order_of(it.elem);
    if (it.mult >= o) cap = std::min(cap, o);
  }
  return cap;
}

template <class Set>
std::optional<std::uint32_t> min_zerosum_len_t(const GroupOps& ops, std::span<const Item> items, std::uint32_t cap) {
  cap = static_cast<std::uint32_t>(std::min<std::uint64_t>(cap, total_size(items)));
  cap = multiplicity_cap(ops, items, cap);
  if (cap == 0) return std::nullopt;
  auto dp = layered_sums<Set>(ops, items, cap);
  for (std::uint32_t len = 1; len <= cap; ++len)
    if (dp[len].test(0)) return len;
  return std::nullopt;
}

template <class Set>
std::vector<bool> representable_t(const GroupOps& ops, std::span<const Item> items, std::uint32_t max_picks) {
  max_picks = static_cast<std::uint32_t>(std::min<std::uint64_t>(max_picks, total_size(items)));
  auto dp = layered_sums<Set>(ops, items, max_picks);
  std::vector<bool> out(ops.order(), false);
  for (auto& s : dp) s.for_each([&](ElemIndex g) { out[g] = true; });
  return out;
}

template <class Set>
struct MinimalEnumerator {
  const GroupOps& ops;
  std::span<const Item> items;
  std::size_t limit;
  std::vector<std::uint8_t> counts;
  std::vector<std::vector<std::uint8_t>> out;

  // sums: non-empty sub-sums of the current (zero-sum free) selection
  void dfs(std::size_t i, const Set& sums, ElemIndex total) {
    if (i == items.size()) return;
    const ElemIndex x = items[i].elem;
    Set cur = sums;
    ElemIndex tot = total;
    for (std::uint32_t c = 0;; ++c) {
      // selection = current + c copies of x; try closing it with one more x
      if (c < items[i].mult && ops.add(tot, x) == 0) {
        counts[i] = static_cast<std::uint8_t>(c + 1);
        out.push_back(counts);
        if (out.size() > limit) throw BudgetExceeded("too many minimal zero-sums");
      }
      counts[i] = static_cast<std::uint8_t>(c);
      dfs(i + 1, cur, tot);
      if (c + 1 > items[i].mult) break;
      // extend by one more copy of x; stop once it stops being zero-sum free
      Set next = cur;
      next |= translated(ops, cur, x);
      next.set(x);
      if (next.test(0)) break;
      cur = std::move(next);
      tot = ops.add(tot, x);
    }
    counts[i] = 0;
  }
};

template <class Set>
std::vector<std::vector<std::uint8_t>> minimal_zerosums_t(const GroupOps& ops, std::span<const Item> items,
                                                          std::size_t limit) {
  for (auto& it : items)
    if (it.mult > 255) throw BudgetExceeded("multiplicity above 255 in minimal zero-sum enumeration");
  MinimalEnumerator<Set> en{ops, items, limit, std::vector<std::uint8_t>(items.size(), 0), {}};
  en.dfs(0, Set(ops.order()), 0);
  return std::move(en.out);
}

}  // namespace

std::optional<std::vector<std::uint32_t>> shortest_selection(const GroupOps& ops, std::span<const Item> items,
                                                             ElemIndex target, std::uint32_t min_len,
                                                             std::uint32_t max_len) {
  if (ops.order() <= 64) return shortest_selection_t<Mask64>(ops, items, target, min_len, max_len);
  return shortest_selection_t<BitVec>(ops, items, target, min_len, max_len);
}

std::optional<std::uint32_t> min_zerosum_len(const GroupOps& ops, std::span<const Item> items, std::uint32_t cap) {
  if (ops.order() <= 64) return min_zerosum_len_t<Mask64>(ops, items, cap);
  return min_zerosum_len_t<BitVec>(ops, items, cap);
}

bool has_zerosum_up_to(const GroupOps& ops, std::span<const Item> items, std::uint32_t k) {
  return min_zerosum_len(ops, items, k).has_value();
}

std::optional<std::uint32_t> max_zerosum_len(const GroupOps& ops, std::span<const Item> items) {
  const std::uint64_t n = total_size(items);
  if (n == 0) return std::nullopt;
  ElemIndex s = 0;
  for (auto& it : items) s = ops.add(s, ops.scale(it.elem, it.mult));
  auto removal = shortest_selection(ops, items, s, 0, static_cast<std::uint32_t>(n - 1));
  if (!removal) return std::nullopt;
  std::uint64_t r = 0;
  for (auto c : *removal) r += c;
  return static_cast<std::uint32_t>(n - r);
}

std::vector<bool> representable(const GroupOps& ops, std::span<const Item> items, std::uint32_t max_picks) {
  if (ops.order() <= 64) return representable_t<Mask64>(ops, items, max_picks);
  return representable_t<BitVec>(ops, items, max_picks);
}

std::vector<std::vector<std::uint8_t>> minimal_zerosums(const GroupOps& ops, std::span<const Item> items,
                                                        std::size_t limit) {
  if (ops.order() <= 64) return minimal_zerosums_t<Mask64>(ops, items, limit);
  return minimal_zerosums_t<BitVec>(ops, items, limit);
}

// ---------------------------------------------------------------------------

PackingSolver::PackingSolver(const GroupOps& ops, std::vector<Item> items) : ops_(ops), items_(std::move(items)) {
  if (total_size(items_) > 255) throw BudgetExceeded("packing: multiset too large");
  minimal_ = minimal_zerosums(ops_, items_);
  containing_.resize(items_.size());
  shortest_ = 0;
  for (std::uint32_t z = 0; z < minimal_.size(); ++z) {
    std::uint32_t len = 0;
    std::size_t first = items_.size();
    for (std::size_t i = 0; i < items_.size(); ++i) {
      len += minimal_[z][i];
      if (minimal_[z][i] && first == items_.size()) first = i;
    }
    minimal_len_.push_back(static_cast<std::uint8_t>(len));
    containing_[first].push_back(z);
    shortest_ = shortest_ == 0 ? len : std::min(shortest_, len);
  }
  // try short parts first
  for (auto& list : containing_)
    std::stable_sort(list.begin(), list.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return minimal_len_[a] < minimal_len_[b]; });
  radix_.resize(items_.size());
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    radix_[i] = r;
    r *= items_[i].mult + 1;
  }
}

std::uint64_t PackingSolver::key(const std::vector<std::uint8_t>& r) const {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < r.size(); ++i) k += r[i] * radix_[i];
  return k;
}

namespace {

bool fits(const std::vector<std::uint8_t>& z, const std::vector<std::uint8_t>& r, std::size_t from) {
  for (std::size_t i = from; i < r.size(); ++i)
    if (z[i] > r[i]) return false;
  return true;
}

void take(const std::vector<std::uint8_t>& z, std::vector<std::uint8_t>& r, std::size_t from) {
  for (std::size_t i = from; i < r.size(); ++i) r[i] -= z[i];
}

void give(const std::vector<std::uint8_t>& z, std::vector<std::uint8_t>& r, std::size_t from) {
  for (std::size_t i = from; i < r.size(); ++i) r[i] += z[i];
}

}  // namespace

std::uint32_t PackingSolver::solve(std::vector<std::uint8_t>& r, std::uint32_t size) {
  if (shortest_ == 0 || size < shortest_) return 0;
  const std::uint64_t k = key(r);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  ++nodes_;
  std::size_t e = 0;
  while (r[e] == 0) ++e;
  const std::uint32_t ub = size / shortest_;
  std::uint32_t best = 0;
  for (std::uint32_t z : containing_[e]) {
    if (!fits(minimal_[z], r, e)) continue;
    take(minimal_[z], r, e);
    best = std::max(best, 1 + solve(r, size - minimal_len_[z]));
    give(minimal_[z], r, e);
    if (best >= ub) break;
  }
  if (best < ub) {
    --r[e];
    best = std::max(best, solve(r, size - 1));
    ++r[e];
  }
  memo_.emplace(k, best);
  return best;
}

bool PackingSolver::reach(std::vector<std::uint8_t>& r, std::uint32_t size, std::uint32_t need) {
  if (need == 0) return true;
  if (shortest_ == 0 || size / shortest_ < need) return false;
  const std::uint64_t k = key(r);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second >= need;
  if (auto it = fail_.find(k); it != fail_.end() && it->second <= need) return false;
  ++nodes_;
  std::size_t e = 0;
  while (r[e] == 0) ++e;
  for (std::uint32_t z : containing_[e]) {
    if (!fits(minimal_[z], r, e)) continue;
    take(minimal_[z], r, e);
    bool ok = reach(r, size - minimal_len_[z], need - 1);
    give(minimal_[z], r, e);
    if (ok) return true;
  }
  --r[e];
  bool ok = reach(r, size - 1, need);
  ++r[e];
  if (ok) return true;
  auto& f = fail_[k];
  if (f == 0 || need < f) f = need;
  return false;
}

std::uint32_t PackingSolver::max_packing() {
  std::vector<std::uint8_t> r(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) r[i] = static_cast<std::uint8_t>(items_[i].mult);
  return solve(r, static_cast<std::uint32_t>(total_size(items_)));
}

bool PackingSolver::at_least(std::uint32_t k) {
  std::vector<std::uint8_t> r(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) r[i] = static_cast<std::uint8_t>(items_[i].mult);
  return reach(r, static_cast<std::uint32_t>(total_size(items_)), k);
}

std::vector<std::vector<std::uint8_t>> PackingSolver::optimal_parts() {
  std::vector<std::uint8_t> r(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) r[i] = static_cast<std::uint8_t>(items_[i].mult);
  std::uint32_t size = static_cast<std::uint32_t>(total_size(items_));
  std::uint32_t remaining = solve(r, size);
  std::vector<std::vector<std::uint8_t>> parts;
  while (remaining > 0) {
    std::size_t e = 0;
    while (r[e] == 0) ++e;
    bool advanced = false;
    for (std::uint32_t z : containing_[e]) {
      if (!fits(minimal_[z], r, e)) continue;
      take(minimal_[z], r, e);
      if (1 + solve(r, size - minimal_len_[z]) == remaining) {
        parts.push_back(minimal_[z]);
        size -= minimal_len_[z];
        --remaining;
        advanced = true;
        break;
      }
      give(minimal_[z], r, e);
    }
    if (!advanced) {
      --r[e];
      --size;
    }
  }
  return parts;
}

}  // namespace zsl::kernel
