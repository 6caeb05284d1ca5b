#include "doctest.h"
#include "oracles.hpp"
#include "zsl/atlas.hpp"
#include "zsl/zerosum.hpp"

using namespace zsl;

namespace {

const GroupSpec g333({3, 3, 3});

bool short_zerosum(const GroupMultiset& a, std::uint32_t up_to) {
  auto m = oracle::min_len(a);
  return m && *m <= up_to;
}

bool distinct(const GroupMultiset& a) { return a.support_size() == a.size(); }

}  // namespace

TEST_CASE("distinct-point classification") {
  const auto eight = classify_distinct_sets(8);
  CHECK(eight.size() == 1);
  CHECK(classify_distinct_sets(9).empty());
  for (std::uint32_t size : {5u, 6u, 7u, 8u})
    for (const auto& f : classify_distinct_sets(size)) {
      CHECK(f.representative.size() == size);
      CHECK(distinct(f.representative));
      CHECK_FALSE(short_zerosum(f.representative, 3));
      if (size == 6) CHECK(has_sum_triple(f.representative));
    }
  CHECK_THROWS_AS(classify_distinct_sets(28), std::invalid_argument);
}

TEST_CASE("five-point lemma") {
  const auto rep = check_five_point_lemma();
  CHECK(rep.sets_checked == 80730);  // C(27, 5)
  CHECK(rep.violators.empty());
  GroupMultiset a = GroupMultiset::from_elements(g333, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 2}, {2, 1, 1}});
  CHECK((has_sum_triple(a) || short_zerosum(a, 3)));
  GroupMultiset z = GroupMultiset::from_elements(g333, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  CHECK(short_zerosum(z, 1));
}

TEST_CASE("14-point classification: strict is the relaxed list filtered by length") {
  const auto relaxed = classify_14_point(true);
  const auto strict = classify_14_point(false);
  CHECK(relaxed.size() > strict.size());
  std::size_t filtered = 0;
  for (const auto& f : relaxed) {
    CHECK(f.representative.size() == 14);
    CHECK_FALSE(short_zerosum(f.representative, 3));
    const auto mx = oracle::max_len(f.representative);
    filtered += !(mx && *mx >= 12);
  }
  CHECK(filtered == strict.size());
  for (const auto& f : strict) {
    CHECK(f.representative.support_size() == 7);
    for (auto [e, c] : f.representative.entries()) CHECK(c == 2);
  }
}

TEST_CASE("doubled 7-point bases and the 14-point list are the same objects") {
  const auto bases = family_bases();
  const auto strict = classify_14_point(false);
  CHECK(bases.size() == strict.size());
  for (const auto& b : bases) {
    const GroupMultiset c = b.representative + b.representative;
    const auto cf = canonical_form(c).representative;
    bool hit = false;
    for (const auto& s : strict) hit = hit || s.representative == cf;
    CHECK(hit);
  }
}

TEST_CASE("3k+5 family recipes satisfy their invariants") {
  for (std::uint32_t k : {3u, 4u}) {
    const auto recipes = build_3k5_family(k);
    if (k == 3) CHECK(recipes.size() == classify_14_point(false).size());
    for (const auto& r : recipes) {
      CHECK(r.assembled.size() == 3 * k + 5);
      CHECK(r.base.size() == 7);
      CHECK(distinct(r.base));
      CHECK_FALSE(short_zerosum(r.assembled, 2));
      const auto pk = max_disjoint_zerosums(r.assembled);
      CHECK(pk.count < k);
      std::uint64_t covered = 0;
      for (const auto& p : pk.parts) covered += p.sub.size();
      CHECK(covered <= 3 * k + 2);
      for (ElemIndex x = 0; x < 27; ++x) {
        GroupMultiset more = r.assembled;
        more.add(x);
        CHECK(max_disjoint_zerosums(more).count >= k);
      }
    }
  }
  CHECK_THROWS_AS(build_3k5_family(2), std::invalid_argument);
}

TEST_CASE("3k+5 completeness") {
  ResultMemo memo;
  const auto low = verify_3k5_completeness(3, 2, {}, &memo);
  CHECK(low.via_constant);
  CHECK(low.constant_value == 11);
  CHECK(low.found_orbits == 0);
  CHECK(low.complete());

  for (std::uint32_t k : {3u, 4u}) {
    const auto rep = verify_3k5_completeness(k, std::nullopt, {}, &memo);
    CAPTURE(k);
    CHECK(rep.size == 3 * k + 5);
    CHECK(rep.complete());
    CHECK(rep.found_orbits == rep.recipe_orbits);
  }
  CHECK_THROWS_AS(verify_3k5_completeness(2), std::invalid_argument);
}
