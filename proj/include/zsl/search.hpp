#pragma once

// Exhaustive computation of D, D_k, D^k and their distinct-element variants.
//
// The search grows multisets one element at a time and keeps one canonical
// representative per GL-orbit at each size (trivial symmetry for
// non-elementary groups). All properties searched for are closed under taking
// sub-multisets, so every extremal multiset of size n+1 extends an orbit of
// size n. The value is the first size with no surviving orbit.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zsl/group.hpp"
#include "zsl/symmetry.hpp"
#include "zsl/zerosum.hpp"

namespace zsl {

enum class Family { D, Dk, Dlen, Dstar, Dkstar, Dlenstar };

/// "D", "Dk", "Dlen", with a trailing '*' for distinct sets.
std::string family_name(Family f);
/// Also accepts "D_k", "D^k", "Dk*", "Dlen*"... Throws std::invalid_argument.
Family parse_family(std::string_view s);
bool family_parameterized(Family f);
bool family_starred(Family f);

struct ConstantQuery {
  GroupSpec group;
  Family family = Family::D;
  std::optional<std::uint32_t> k;

  /// Throws std::invalid_argument: k missing/present wrongly, D^k with k below
  /// the exponent, D_k with k = 0.
  void validate() const;
  std::string to_string() const;  // "Dk(k=2) over 3,3,3"
};

struct SearchOptions {
  std::uint64_t node_budget = 1'000'000'000;
  std::uint32_t max_value = 40;
  std::uint64_t max_order = 4096;
  /// D_k: skip the bound chain and run the exhaustive search directly.
  bool full_search = false;
  std::function<void(const std::string&)> progress;
};

struct ConstantResult;
/// Results keyed by ConstantQuery::to_string, shared between related queries.
using ResultMemo = std::map<std::string, ConstantResult>;

struct ConstantResult {
  std::uint32_t value = 0;
  GroupMultiset witness{GroupSpec({1})};  // size value-1, lacks the structure
  std::uint64_t witness_orbits = 0;       // orbits of size value-1 (exhaustive runs)
  std::uint64_t node_count = 0;
  std::string method;                     // "exhaustive" or "chain"
  std::vector<std::uint64_t> level_orbits;  // surviving orbits per size
  /// Orbits of size value-1 that were found; all of them when exhaustive.
  std::vector<GroupMultiset> extremal;
  bool orbits_complete = false;
};

/// True when A lacks the structure the query asks for (A is "good": no
/// zero-sum for D, none of length <= k for D^k, fewer than k disjoint ones
/// for D_k; starred families also require distinct elements).
bool lacks_structure(const ConstantQuery& q, const GroupMultiset& a);

/// Throws BudgetExceeded when a guard or the node budget is hit.
ConstantResult compute_constant(const ConstantQuery& q, const SearchOptions& opt = {}, ResultMemo* memo = nullptr);

struct TableEntry {
  std::string label;  // "D^3", "D_3", "D_2*", ...
  ConstantQuery query;
  std::uint32_t expected = 0;
  std::optional<std::uint32_t> computed;
  std::string error;  // budget message when not computed
  bool pass = false;
  double wall_ms = 0;
  ConstantResult result;
};

/// The thirteen Z_3^3 values: D^3, D^4, D^5, their starred versions, D_2,
/// D_3, D*, D_2* and D_k = 3k+6 for k = 3, 4, 5.
std::vector<TableEntry> paper_table_entries();
std::vector<TableEntry> verify_paper_table(const SearchOptions& opt = {},
                                           std::function<void(const TableEntry&)> on_entry = {});

/// Inclusion-maximal distinct-element sets with no zero-sum whose length lies
/// in [min_len, max_len] (target ignored), one per orbit, largest first.
std::vector<CanonicalForm> max_zerosum_free_supports(const GroupSpec& group, const ZerosumQuery& constraints,
                                                     const SearchOptions& opt = {});

/// Orbit representatives of multisets satisfying `keep`, grown one element at
/// a time. `keep` must be closed under sub-multisets. Each level holds the
/// canonical count vectors (one byte per group element) in sorted order;
/// the last level is empty unless max_size was reached.
struct LevelSearch {
  std::uint32_t first_size = 0;
  std::vector<std::vector<std::string>> levels;  // levels[i]: size first_size + i
  std::uint64_t nodes = 0;
};
/// Starts from the empty multiset, or from `seeds` (all of one size) when given.
LevelSearch grow_levels(const GroupSpec& group, std::uint32_t max_size, bool distinct_only,
                        const std::function<bool(const GroupMultiset&)>& keep, const SearchOptions& opt = {},
                        const std::vector<GroupMultiset>& seeds = {});
GroupMultiset key_to_multiset(const GroupSpec& group, const std::string& key);

}  // namespace zsl
