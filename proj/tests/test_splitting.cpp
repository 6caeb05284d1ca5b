#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zsl/errors.hpp"
#include "zsl/splitting.hpp"
#include "zsl/zerosum.hpp"

using namespace zsl;

TEST_CASE("split modulus") {
  CHECK(split_modulus(GroupSpec({3, 3, 3})) == 1);
  CHECK(split_modulus(GroupSpec({3, 3, 15})) == 5);
  CHECK(split_modulus(GroupSpec({3, 3, 6})) == 2);
  CHECK_THROWS_AS(split_modulus(GroupSpec({3, 3, 9})), SpecMismatch);
  CHECK_THROWS_AS(split_modulus(GroupSpec({3, 15})), SpecMismatch);
  CHECK_THROWS_AS(zerosum_free_witness_3d(3), SpecMismatch);
}

TEST_CASE("split of a single element") {
  const GroupSpec g({3, 3, 15});
  GroupMultiset a(g);
  a.add(g.index_of({1, 2, 7}));
  const auto s = split(a);
  REQUIRE(s.occurrences.size() == 1);
  CHECK(s.d == 5);
  CHECK(GroupSpec({3, 3, 3}).coords_of(s.occurrences[0].projected) == std::vector<std::uint32_t>{1, 2, 1});
  CHECK(s.occurrences[0].label == 2);
}

TEST_CASE("d = 1: labels vanish and the projection is the identity") {
  std::mt19937_64 rng(4);
  const GroupSpec g({3, 3, 3});
  const auto a = oracle::random_multiset(g, 12, rng);
  const auto s = split(a);
  CHECK(s.projected == a);
  for (const auto& o : s.occurrences) CHECK(o.label == 0);
}

TEST_CASE("round trip for d in {1, 2, 5, 7, 11}") {
  std::mt19937_64 rng(10);
  for (std::uint32_t d : {1u, 2u, 5u, 7u, 11u}) {
    const GroupSpec g = GroupSpec::z33_3d(d);
    for (int t = 0; t < 50; ++t) {
      const auto a = oracle::random_multiset(g, rng() % 40, rng);
      const auto s = split(a);
      CHECK(s.projected.size() == a.size());
      CHECK(unsplit(s) == a);
    }
  }
}

TEST_CASE("witness sequences are zero-sum free and have length 3d + 3") {
  for (std::uint32_t d : {1u, 2u, 4u, 5u, 7u, 8u, 10u, 11u}) {
    const auto w = zerosum_free_witness_3d(d);
    CHECK(w.size() == 3 * d + 3);
    CHECK_FALSE(min_zerosum_length(w).has_value());
  }
  CHECK(zerosum_free_witness_3d(1).size() == 6);
}

TEST_CASE("certificates are found and verified") {
  std::mt19937_64 rng(77);
  for (std::uint32_t d : {1u, 2u, 5u, 7u}) {
    const GroupSpec g = GroupSpec::z33_3d(d);
    for (int t = 0; t < 300; ++t) {
      const auto a = oracle::random_multiset(g, 3 * d + 4 + rng() % 3, rng);
      SplitStats st;
      const auto c = find_zerosum_3d(a, &st);
      CHECK(verify_certificate(a, c));
      CHECK(!st.path.empty());
    }
  }
}

TEST_CASE("identity short-circuit, precondition and group errors") {
  const GroupSpec g({3, 3, 15});
  GroupMultiset a = zerosum_free_witness_3d(5);
  CHECK_THROWS_AS(find_zerosum_3d(a), std::invalid_argument);  // only 18 elements
  a.add(0);
  SplitStats st;
  const auto c = find_zerosum_3d(a, &st);
  CHECK(st.path == "identity");
  CHECK(c.sub.size() == 1);
  GroupMultiset bad(GroupSpec({3, 3, 9}));
  bad.add(1, 20);
  CHECK_THROWS_AS(find_zerosum_3d(bad), SpecMismatch);
}

TEST_CASE("all single-element extensions of the d = 5 witness") {
  const auto w = zerosum_free_witness_3d(5);
  for (ElemIndex x = 0; x < 135; ++x) {
    GroupMultiset a = w;
    a.add(x);
    CHECK(verify_certificate(a, find_zerosum_3d(a)));
  }
}
