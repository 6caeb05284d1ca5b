#include <omp.h>

#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "zsl/errors.hpp"
#include "zsl/symmetry.hpp"

using namespace zsl;

TEST_CASE("GL enumeration sizes and distinctness") {
  CHECK(gl_order(3, 3) == 11232);
  CHECK(gl_order(2, 3) == 48);
  CHECK(gl_order(3, 2) == 168);
  CHECK(gl_order(2, 5) == 480);
  for (auto [r, p] : std::vector<std::pair<std::size_t, std::uint32_t>>{{3, 3}, {2, 3}, {3, 2}, {2, 5}, {1, 7}}) {
    const auto maps = enumerate_gl(r, p);
    CHECK(maps.size() == gl_order(r, p));
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& m : maps) {
      CHECK(m.det() != 0);
      seen.insert(m.m);
    }
    CHECK(seen.size() == maps.size());
  }
  CHECK_THROWS_AS(enumerate_gl(4, 5), BudgetExceeded);  // |GL(4,5)| far above the guard
}

TEST_CASE("linear maps are additive bijections") {
  std::mt19937_64 rng(3);
  const GroupSpec g({3, 3, 3});
  for (int t = 0; t < 50; ++t) {
    const auto m = random_gl(3, 3, rng);
    std::set<ElemIndex> image;
    for (ElemIndex x = 0; x < 27; ++x) {
      image.insert(m.apply(g, x));
      const ElemIndex y = rng() % 27;
      CHECK(m.apply(g, g.add(x, y)) == g.add(m.apply(g, x), m.apply(g, y)));
    }
    CHECK(image.size() == 27);
  }
  GroupMultiset a(GroupSpec({3, 9}));
  CHECK_THROWS_AS(apply_map(LinearMap::identity(2, 3), a), SpecMismatch);
}

TEST_CASE("canonical form is invariant under 100 random maps per instance") {
  std::mt19937_64 rng(17);
  const GroupSpec g({3, 3, 3});
  for (int inst = 0; inst < 25; ++inst) {
    const auto a = oracle::random_multiset(g, 1 + rng() % 14, rng);
    const auto cf = canonical_form(a);
    const auto ref = canonical_form_reference(a);
    CHECK(cf.representative == ref.representative);
    CHECK(cf.stabilizer_size == ref.stabilizer_size);
    CHECK(cf.orbit_size() * cf.stabilizer_size == 11232);
    CHECK(cf.representative.size() == a.size());
    for (int t = 0; t < 100; ++t) {
      const auto m = random_gl(3, 3, rng);
      CHECK(canonical_form(apply_map(m, a)).representative == cf.representative);
    }
  }
}

TEST_CASE("canonical form over other elementary groups") {
  std::mt19937_64 rng(23);
  for (const auto& [r, p] : std::vector<std::pair<std::size_t, std::uint32_t>>{{2, 3}, {3, 2}, {2, 5}}) {
    const GroupSpec g = GroupSpec::elementary(p, r);
    for (int inst = 0; inst < 20; ++inst) {
      const auto a = oracle::random_multiset(g, 1 + rng() % 8, rng);
      const auto cf = canonical_form(a);
      CHECK(cf.representative == canonical_form_reference(a).representative);
      // stabilizer by brute force
      std::uint64_t fix = 0;
      for (const auto& m : enumerate_gl(r, p)) fix += apply_map(m, cf.representative) == cf.representative;
      CHECK(fix == cf.stabilizer_size);
      for (int t = 0; t < 20; ++t)
        CHECK(canonical_form(apply_map(random_gl(r, p, rng), a)).representative == cf.representative);
    }
  }
}

TEST_CASE("non-elementary groups: trivial action, no canonical form") {
  const GroupSpec g({3, 9});
  Canonizer cz(g);
  CHECK(cz.trivial());
  GroupMultiset a(g);
  a.add(5, 2);
  a.add(13);
  CHECK_THROWS_AS(canonical_form(a), std::invalid_argument);
}

TEST_CASE("dense count round trip") {
  std::mt19937_64 rng(1);
  const GroupSpec g({3, 3, 3});
  const auto a = oracle::random_multiset(g, 12, rng);
  const auto d = dense_counts(a);
  CHECK(d.size() == 27);
  CHECK(from_dense(g, d) == a);
}

TEST_CASE("orbit dedupe: parallel equals serial, independent of thread count") {
  std::mt19937_64 rng(31);
  const GroupSpec g({3, 3, 3});
  std::vector<GroupMultiset> sets;
  for (int i = 0; i < 300; ++i) {
    auto a = oracle::random_multiset(g, 4, rng);
    sets.push_back(a);
    sets.push_back(apply_map(random_gl(3, 3, rng), a));
  }
  const auto serial = orbit_dedupe_serial(sets);
  std::uint64_t occ = 0;
  for (const auto& c : serial) occ += c.occurrences;
  CHECK(occ == sets.size());
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    const auto par = orbit_dedupe(sets);
    REQUIRE(par.size() == serial.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].form.representative == serial[i].form.representative);
      CHECK(par[i].occurrences == serial[i].occurrences);
    }
  }
  // each orbit's sets are exactly those sharing its canonical form
  std::set<std::string> reps;
  for (const auto& s : sets) reps.insert(canonical_form(s).representative.encode());
  CHECK(reps.size() == serial.size());
}
