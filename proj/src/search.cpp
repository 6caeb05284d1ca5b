#include "zsl/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <unordered_set>

#include <omp.h>

#include "zsl/errors.hpp"
#include "zsl/kernels.hpp"

namespace zsl {

std::string family_name(Family f) {
  switch (f) {
    case Family::D: return "D";
    case Family::Dk: return "Dk";
    case Family::Dlen: return "Dlen";
    case Family::Dstar: return "D*";
    case Family::Dkstar: return "Dk*";
    case Family::Dlenstar: return "Dlen*";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  std::string t(s);
  bool star = !t.empty() && t.back() == '*';
  if (star) t.pop_back();
  Family f;
  if (t == "D") f = Family::D;
  else if (t == "Dk" || t == "D_k") f = Family::Dk;
  else if (t == "Dlen" || t == "D^k") f = Family::Dlen;
  else throw std::invalid_argument("unknown family '" + std::string(s) + "'");
  if (!star) return f;
  return f == Family::D ? Family::Dstar : f == Family::Dk ? Family::Dkstar : Family::Dlenstar;
}

bool family_parameterized(Family f) { return f != Family::D && f != Family::Dstar; }
bool family_starred(Family f) { return f == Family::Dstar || f == Family::Dkstar || f == Family::Dlenstar; }

void ConstantQuery::validate() const {
  if (family_parameterized(family) != k.has_value())
    throw std::invalid_argument(family_name(family) + (k ? " takes no k" : " needs k"));
  if (k && *k == 0) throw std::invalid_argument("k must be positive");
  if (family == Family::Dlen && *k < group.exponent())
    throw std::invalid_argument("D^k is infinite for k below the exponent " + std::to_string(group.exponent()));
}

std::string ConstantQuery::to_string() const {
  std::string s = family_name(family);
  if (k) s += "(k=" + std::to_string(*k) + ")";
  return s + " over " + group.to_string();
}

namespace {

bool distinct(const GroupMultiset& a) {
  for (auto [e, c] : a.entries())
    if (c > 1) return false;
  return true;
}

}  // namespace

bool lacks_structure(const ConstantQuery& q, const GroupMultiset& a) {
  if (family_starred(q.family) && !distinct(a)) return false;
  kernel::GroupOps ops(a.spec());
  auto items = kernel::items_of(a);
  switch (q.family) {
    case Family::D:
    case Family::Dstar:
      return !kernel::min_zerosum_len(ops, items, static_cast<std::uint32_t>(a.size()));
    case Family::Dlen:
    case Family::Dlenstar:
      return !kernel::has_zerosum_up_to(ops, items, *q.k);
    case Family::Dk:
    case Family::Dkstar: {
      if (a.size() < *q.k) return true;
      kernel::PackingSolver solver(ops, std::move(items));
      return !solver.at_least(*q.k);
    }
  }
  return false;
}

GroupMultiset key_to_multiset(const GroupSpec& group, const std::string& key) {
  GroupMultiset out(group);
  for (ElemIndex e = 0; e < key.size(); ++e)
    if (key[e]) out.add(e, static_cast<unsigned char>(key[e]));
  return out;
}

namespace {

std::string to_key(std::span<const std::uint32_t> counts) {
  std::string k(counts.size(), '\0');
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 255) throw BudgetExceeded("search: multiplicity above 255");
    k[i] = static_cast<char>(counts[i]);
  }
  return k;
}

// Runs f(i) for i in [0, n) on all threads, rethrowing the first exception.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  std::exception_ptr err;
  const long N = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < N; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

void charge(std::uint64_t& nodes, std::uint64_t add, const SearchOptions& opt) {
  nodes += add;
  if (nodes > opt.node_budget)
    throw BudgetExceeded("search: node budget of " + std::to_string(opt.node_budget) + " exceeded");
}

// Canonical keys of every one-element extension, deduplicated and sorted.
std::vector<std::string> children(const Canonizer& cz, const std::vector<std::string>& level, bool distinct_only) {
  const std::size_t n = cz.spec().order();
  const int T = omp_get_max_threads();
  std::vector<std::unordered_set<std::string>> found(T);
  parallel_for(level.size(), [&](std::size_t i) {
    auto& out = found[omp_get_thread_num()];
    std::vector<std::uint32_t> counts(n);
    for (std::size_t e = 0; e < n; ++e) counts[e] = static_cast<unsigned char>(level[i][e]);
    for (std::size_t x = 0; x < n; ++x) {
      if (distinct_only && counts[x]) continue;
      ++counts[x];
      out.insert(to_key(cz.canon(counts).rep));
      --counts[x];
    }
  });
  std::unordered_set<std::string> all;
  for (auto& s : found) {
    all.merge(s);
  }
  std::vector<std::string> out(all.begin(), all.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LevelSearch grow_levels(const GroupSpec& group, std::uint32_t max_size, bool distinct_only,
                        const std::function<bool(const GroupMultiset&)>& keep, const SearchOptions& opt,
                        const std::vector<GroupMultiset>& seeds) {
  if (group.order() > opt.max_order) throw BudgetExceeded("search: group order above " + std::to_string(opt.max_order));
  Canonizer cz(group);
  LevelSearch ls;
  std::vector<std::string> cur;
  if (seeds.empty()) {
    cur.push_back(std::string(group.order(), '\0'));
  } else {
    ls.first_size = static_cast<std::uint32_t>(seeds.front().size());
    for (const auto& s : seeds) {
      if (s.size() != ls.first_size) throw std::invalid_argument("grow_levels: seeds of different sizes");
      cur.push_back(to_key(cz.canon(dense_counts(s)).rep));
    }
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  }
  for (std::uint32_t size = ls.first_size;; ++size) {
    const bool stop = cur.empty() || size >= max_size;
    ls.levels.push_back(std::move(cur));
    if (opt.progress)
      opt.progress("size " + std::to_string(size) + ": " + std::to_string(ls.levels.back().size()) + " orbits");
    if (stop) break;
    const auto& prev = ls.levels.back();
    charge(ls.nodes, prev.size() * group.order(), opt);
    auto cand = children(cz, prev, distinct_only);
    charge(ls.nodes, cand.size(), opt);
    std::vector<char> ok(cand.size(), 0);
    parallel_for(cand.size(), [&](std::size_t i) { ok[i] = keep(key_to_multiset(group, cand[i])); });
    cur.clear();
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (ok[i]) cur.push_back(std::move(cand[i]));
  }
  return ls;
}

namespace {

ConstantResult exhaustive(const ConstantQuery& q, const SearchOptions& opt) {
  auto keep = [&q](const GroupMultiset& a) { return lacks_structure(q, a); };
  auto ls = grow_levels(q.group, opt.max_value, family_starred(q.family), keep, opt);
  if (!ls.levels.back().empty())
    throw BudgetExceeded(q.to_string() + ": value exceeds " + std::to_string(opt.max_value));
  ConstantResult r;
  r.method = "exhaustive";
  r.node_count = ls.nodes;
  for (auto& l : ls.levels) r.level_orbits.push_back(l.size());
  r.value = static_cast<std::uint32_t>(ls.levels.size() - 1);
  if (r.value == 0) throw std::logic_error("empty multiset lacks no structure");
  const auto& top = ls.levels[ls.levels.size() - 2];
  for (const auto& k : top) r.extremal.push_back(key_to_multiset(q.group, k));
  r.witness = r.extremal.front();
  r.witness_orbits = top.size();
  r.orbits_complete = true;
  return r;
}

ConstantResult compute(const ConstantQuery& q, const SearchOptions& opt, ResultMemo& memo);

// D_k <= max(D^j, D_{k-1} + j) for every j >= exponent: a short zero-sum of
// length <= j leaves at least D_{k-1} elements. The bound is confirmed by
// extending extremal D_{k-1} multisets to size bound - 1.
std::optional<ConstantResult> chain(const ConstantQuery& q, const SearchOptions& opt, ResultMemo& memo) {
  const std::uint32_t k = *q.k;
  ConstantQuery prev_q{q.group, Family::Dk, k - 1};
  const ConstantResult prev = compute(prev_q, opt, memo);
  std::uint64_t nodes = 0;
  std::uint32_t upper = std::numeric_limits<std::uint32_t>::max();
  for (std::uint32_t j = q.group.exponent(); prev.value + j < upper; ++j) {
    const ConstantResult dj = compute({q.group, Family::Dlen, j}, opt, memo);
    upper = std::min(upper, std::max(dj.value, prev.value + j));
  }
  if (opt.progress) opt.progress(q.to_string() + ": chain bound " + std::to_string(upper));
  // extend by exp(G) copies of an element of maximal order
  kernel::GroupOps ops(q.group);
  const std::uint32_t e = q.group.exponent();
  std::vector<GroupMultiset> seeds;
  for (const auto& w : prev.extremal)
    for (ElemIndex x = 0; x < q.group.order(); ++x) {
      if (ops.order_of(x) != e) continue;
      GroupMultiset s = w;
      s.add(x, e);
      if (lacks_structure(q, s)) seeds.push_back(std::move(s));
    }
  if (seeds.empty()) return std::nullopt;
  if (seeds.front().size() >= upper) throw std::logic_error("chain: seed larger than proven bound");
  auto keep = [&q](const GroupMultiset& a) { return lacks_structure(q, a); };
  auto ls = grow_levels(q.group, upper - 1, false, keep, opt, seeds);
  nodes += ls.nodes;
  const auto& top = ls.levels.back();
  if (ls.first_size + ls.levels.size() - 1 != upper - 1 || top.empty()) return std::nullopt;
  ConstantResult r;
  r.value = upper;
  r.method = "chain";
  r.node_count = nodes;
  for (const auto& key : top) r.extremal.push_back(key_to_multiset(q.group, key));
  r.witness = r.extremal.front();
  r.witness_orbits = top.size();
  r.orbits_complete = false;
  return r;
}

ConstantResult compute(const ConstantQuery& q, const SearchOptions& opt, ResultMemo& memo) {
  q.validate();
  const std::string key = q.to_string();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  if (q.group.order() > opt.max_order)
    throw BudgetExceeded("search: group order " + std::to_string(q.group.order()) + " above limit");
  std::optional<ConstantResult> r;
  if (q.family == Family::Dk && *q.k >= 3 && !opt.full_search) r = chain(q, opt, memo);
  if (!r) r = exhaustive(q, opt);
  memo.emplace(key, *r);
  return *r;
}

}  // namespace

ConstantResult compute_constant(const ConstantQuery& q, const SearchOptions& opt, ResultMemo* memo) {
  ResultMemo local;
  return compute(q, opt, memo ? *memo : local);
}

std::vector<TableEntry> paper_table_entries() {
  const GroupSpec g = GroupSpec::elementary(3, 3);
  auto e = [&](std::string label, Family f, std::optional<std::uint32_t> k, std::uint32_t v) {
    TableEntry t{std::move(label), ConstantQuery{g, f, k}, v, std::nullopt, {}, false, 0, {}};
    return t;
  };
  return {
      e("D^3", Family::Dlen, 3, 17),       e("D^4", Family::Dlen, 4, 10),       e("D^5", Family::Dlen, 5, 9),
      e("D^3*", Family::Dlenstar, 3, 9),   e("D^4*", Family::Dlenstar, 4, 8),   e("D^5*", Family::Dlenstar, 5, 8),
      e("D_2", Family::Dk, 2, 11),         e("D_3", Family::Dk, 3, 15),         e("D*", Family::Dstar, std::nullopt, 7),
      e("D_2*", Family::Dkstar, 2, 10),    e("D_k(k=3)", Family::Dk, 3, 15),    e("D_k(k=4)", Family::Dk, 4, 18),
      e("D_k(k=5)", Family::Dk, 5, 21),
  };
}

std::vector<TableEntry> verify_paper_table(const SearchOptions& opt, std::function<void(const TableEntry&)> on_entry) {
  auto entries = paper_table_entries();
  ResultMemo memo;
  for (auto& t : entries) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      t.result = compute_constant(t.query, opt, &memo);
      t.computed = t.result.value;
      t.pass = t.result.value == t.expected;
    } catch (const BudgetExceeded& ex) {
      t.error = ex.what();
    }
    t.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (on_entry) on_entry(t);
  }
  return entries;
}

std::vector<CanonicalForm> max_zerosum_free_supports(const GroupSpec& group, const ZerosumQuery& constraints,
                                                     const SearchOptions& opt) {
  if (!group.is_elementary()) throw SpecMismatch("max_zerosum_free_supports: group is not elementary abelian");
  ZerosumQuery q = constraints;
  q.target.reset();
  q.distinct_only = true;
  auto keep = [&q](const GroupMultiset& a) { return !find_zerosum(a, q); };
  auto ls = grow_levels(group, static_cast<std::uint32_t>(group.order()), true, keep, opt);
  Canonizer cz(group);
  std::vector<CanonicalForm> out;
  for (std::size_t li = ls.levels.size(); li-- > 0;) {
    const auto& level = ls.levels[li];
    if (level.empty()) continue;
    const std::vector<std::string> empty;
    const auto& next = li + 1 < ls.levels.size() ? ls.levels[li + 1] : empty;
    for (const auto& key : level) {
      std::vector<std::uint32_t> counts(key.size());
      for (std::size_t e = 0; e < key.size(); ++e) counts[e] = static_cast<unsigned char>(key[e]);
      bool maximal = true;
      for (std::size_t x = 0; x < counts.size() && maximal; ++x) {
        if (counts[x]) continue;
        ++counts[x];
        auto c = cz.canon(counts);
        maximal = !std::binary_search(next.begin(), next.end(), to_key(c.rep));
        --counts[x];
      }
      if (!maximal) continue;
      auto c = cz.canon(counts);
      out.push_back({from_dense(group, c.rep), c.stabilizer});
    }
  }
  return out;
}

}  // namespace zsl
