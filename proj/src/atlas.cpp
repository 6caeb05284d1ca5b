#include "zsl/atlas.hpp"

#include <algorithm>
#include <set>

#include "zsl/errors.hpp"
#include "zsl/kernels.hpp"
#include "zsl/zerosum.hpp"

namespace zsl {

namespace {

const GroupSpec& z333() {
  static const GroupSpec g = GroupSpec::elementary(3, 3);
  return g;
}

bool no_short_zerosum(const GroupMultiset& a) {
  kernel::GroupOps ops(a.spec());
  return !kernel::has_zerosum_up_to(ops, kernel::items_of(a), 3);
}

std::vector<CanonicalForm> forms_of(const GroupSpec& g, const std::vector<std::string>& keys) {
  Canonizer cz(g);
  std::vector<CanonicalForm> out;
  for (const auto& k : keys) {
    auto m = key_to_multiset(g, k);
    auto c = cz.canon(dense_counts(m));
    out.push_back({std::move(m), c.stabilizer});
  }
  return out;
}

}  // namespace

std::vector<CanonicalForm> classify_distinct_sets(std::uint32_t size, const SearchOptions& opt) {
  if (size > 27) throw std::invalid_argument("classify_distinct_sets: size above 27");
  auto ls = grow_levels(z333(), size, true, no_short_zerosum, opt);
  if (ls.levels.size() <= size) return {};
  return forms_of(z333(), ls.levels[size]);
}

bool has_sum_triple(const GroupMultiset& a) {
  const auto sup = a.support();
  std::set<ElemIndex> s(sup.begin(), sup.end());
  for (std::size_t i = 0; i < sup.size(); ++i)
    for (std::size_t j = i + 1; j < sup.size(); ++j) {
      const ElemIndex z = a.spec().add(sup[i], sup[j]);
      if (z != sup[i] && z != sup[j] && s.count(z)) return true;
    }
  return false;
}

FivePointReport check_five_point_lemma() {
  const GroupSpec& g = z333();
  FivePointReport rep;
  std::vector<ElemIndex> pick(5);
  for (pick[0] = 0; pick[0] < 27; ++pick[0])
    for (pick[1] = pick[0] + 1; pick[1] < 27; ++pick[1])
      for (pick[2] = pick[1] + 1; pick[2] < 27; ++pick[2])
        for (pick[3] = pick[2] + 1; pick[3] < 27; ++pick[3])
          for (pick[4] = pick[3] + 1; pick[4] < 27; ++pick[4]) {
            GroupMultiset a(g);
            for (auto e : pick) a.add(e);
            ++rep.sets_checked;
            if (!no_short_zerosum(a) || has_sum_triple(a)) continue;
            rep.violators.push_back(a);
          }
  return rep;
}

std::vector<CanonicalForm> classify_14_point(bool relaxed, const SearchOptions& opt) {
  auto ls = grow_levels(z333(), 14, false, no_short_zerosum, opt);
  if (ls.levels.size() <= 14) return {};
  std::vector<CanonicalForm> out;
  for (auto& f : forms_of(z333(), ls.levels[14])) {
    if (!relaxed) {
      auto mx = max_zerosum_length(f.representative);
      if (mx && *mx >= 12) continue;
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<CanonicalForm> family_bases() {
  std::vector<CanonicalForm> out;
  for (auto& f : classify_distinct_sets(7)) {
    GroupMultiset c = f.representative + f.representative;
    auto mx = max_zerosum_length(c);
    if (mx && *mx >= 12) continue;
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

void compositions(std::uint32_t total, std::size_t parts, std::vector<std::uint32_t>& cur,
                  std::vector<std::vector<std::uint32_t>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::uint32_t v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<FamilyRecipe> build_3k5_family(std::uint32_t k) {
  if (k < 3) throw std::invalid_argument("build_3k5_family: k must be at least 3");
  const GroupSpec& g = z333();
  kernel::GroupOps ops(g);
  Canonizer cz(g);
  std::vector<std::vector<std::uint32_t>> kappas;
  std::vector<std::uint32_t> cur;
  compositions(k - 3, 7, cur, kappas);
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<FamilyRecipe> out;
  for (const auto& base : family_bases()) {
    const auto pts = base.representative.support();
    for (const auto& kap : kappas) {
      GroupMultiset a = base.representative + base.representative;
      for (std::size_t i = 0; i < 7; ++i)
        if (kap[i]) a.add(pts[i], 3 * kap[i]);
      kernel::PackingSolver solver(ops, kernel::items_of(a));
      if (solver.at_least(k)) continue;
      if (!seen.insert(cz.canon(dense_counts(a)).rep).second) continue;
      out.push_back({base.representative, kap, std::move(a)});
    }
  }
  return out;
}

CompletenessReport verify_3k5_completeness(std::uint32_t k, std::optional<std::uint32_t> threshold,
                                           const SearchOptions& opt, ResultMemo* memo) {
  if (k < 3) throw std::invalid_argument("verify_3k5_completeness: k must be at least 3");
  const GroupSpec& g = z333();
  CompletenessReport rep;
  rep.k = k;
  rep.threshold = threshold.value_or(k);
  rep.size = 3 * k + 5;
  if (rep.threshold == 0) throw std::invalid_argument("verify_3k5_completeness: threshold must be positive");

  const auto recipes = build_3k5_family(k);
  rep.recipe_orbits = recipes.size();
  Canonizer cz(g);
  std::set<std::vector<std::uint32_t>> recipe_keys;
  for (const auto& r : recipes) recipe_keys.insert(cz.canon(dense_counts(r.assembled)).rep);

  std::vector<GroupMultiset> found;
  ConstantQuery q{g, Family::Dk, rep.threshold};
  ResultMemo local;
  const ConstantResult c = compute_constant(q, opt, memo ? memo : &local);
  rep.constant_value = c.value;
  if (c.value <= rep.size) {
    // every multiset of this size already has `threshold` disjoint zero-sums
    rep.via_constant = true;
  } else {
    auto keep = [&q](const GroupMultiset& a) { return lacks_structure(q, a); };
    auto ls = grow_levels(g, rep.size, false, keep, opt);
    if (ls.levels.size() > rep.size)
      for (const auto& key : ls.levels[rep.size]) found.push_back(key_to_multiset(g, key));
  }
  rep.found_orbits = found.size();
  for (const auto& f : found)
    if (!recipe_keys.count(cz.canon(dense_counts(f)).rep)) rep.unmatched.push_back(f);
  // recipes that the search did not produce are just as much a mismatch
  if (found.size() - rep.unmatched.size() != recipe_keys.size() && rep.threshold == k)
    for (const auto& r : recipes) {
      bool hit = false;
      auto key = cz.canon(dense_counts(r.assembled)).rep;
      for (const auto& f : found) hit = hit || cz.canon(dense_counts(f)).rep == key;
      if (!hit) rep.unmatched.push_back(r.assembled);
    }
  return rep;
}

}  // namespace zsl
