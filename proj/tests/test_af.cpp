#include "doctest.h"
#include "oracles.hpp"
#include "zsl/af.hpp"
#include "zsl/symmetry.hpp"
#include "zsl/zerosum.hpp"

using namespace zsl;

TEST_CASE("restricted-filter enumeration counts") {
  const auto en = enumerate_af_candidates(AfFilter::PaperCaseViii);
  CHECK(en.paper.raw == en.raw.size());
  CHECK(en.paper.raw == 97);
  CHECK(en.paper.with_diagonal_pair == 82);
  CHECK(en.paper.rotated_c3 == 41);
  CHECK(en.paper.rotated_s3 == 41);
  CHECK(en.paper.orbits_rotated == 16);
  CHECK(en.paper.orbits_total == 19);
  CHECK(en.candidates.size() == 19);
  for (const auto& a : en.raw) CHECK(is_af_candidate(a));
}

TEST_CASE("candidates satisfy the defining filters by naive enumeration") {
  for (auto filter : {AfFilter::PaperCaseViii, AfFilter::Full}) {
    const auto en = enumerate_af_candidates(filter);
    for (const auto& c : en.candidates) {
      CHECK(c.a.size() == 10);
      const auto mn = oracle::min_len(c.a), mx = oracle::max_len(c.a);
      CHECK((!mn || *mn >= 4));
      CHECK((!mx || *mx <= 7));
      CHECK(oracle::packing(c.a) <= 1);
      CHECK(c.zerosum_subsets.size() == oracle::count_zerosums(c.a));
      CHECK(c.orbit_size * canonical_form(c.a).stabilizer_size == 11232);
    }
  }
}

TEST_CASE("the full filter contains every restricted-filter orbit") {
  const auto paper = enumerate_af_candidates(AfFilter::PaperCaseViii);
  const auto full = enumerate_af_candidates(AfFilter::Full);
  CHECK(full.candidates.size() >= paper.candidates.size());
  for (const auto& p : paper.candidates) {
    bool hit = false;
    for (const auto& f : full.candidates) hit = hit || f.a == p.a;
    CHECK(hit);
  }
}

TEST_CASE("system construction") {
  const auto en = enumerate_af_candidates(AfFilter::PaperCaseViii);
  const auto& cand = en.candidates.front();
  const auto anchor = cand.a.support().front();
  const auto sys = build_system(cand, cand.a.spec().element(anchor));
  CHECK(sys.M.rows() == cand.zerosum_subsets.size() + 1);
  CHECK(sys.M.cols() == cand.a.support_size());
  CHECK(sys.c.size() == sys.M.rows());
  // absent anchor
  ElemIndex missing = 0;
  while (cand.a.count(missing)) ++missing;
  CHECK_THROWS_AS(build_system(cand, cand.a.spec().element(missing)), std::invalid_argument);
}

TEST_CASE("no labelling exists for any candidate; obstructions only at 2 and 3") {
  for (auto filter : {AfFilter::PaperCaseViii, AfFilter::Full}) {
    const auto rep = verify_af_theorem(filter);
    CHECK(rep.violations == 0);
    CHECK(rep.verdicts.size() == rep.candidates);
    for (std::size_t i = 0; i < rep.verdicts.size(); ++i) {
      const auto& cand = rep.enumeration.candidates[i];
      CHECK(rep.verdicts[i].anchors.size() == cand.a.support_size());
      for (const auto& a : rep.verdicts[i].anchors) {
        CHECK_FALSE(a.feasible);
        CHECK_FALSE(a.generic);
        CHECK(a.obstruction != 0);
        for (const auto& p : a.feasible_primes) CHECK((p == 2 || p == 3));
        const auto sys = build_system(cand, cand.a.spec().element(a.anchor));
        for (std::uint64_t p : {5, 7}) CHECK_FALSE(oracle::brute_solution(sys.M, sys.c, p).has_value());
      }
    }
  }
}

TEST_CASE("bracket coefficient tables and case matrices") {
  const auto rep = bracket_coefficient_tables();
  CHECK(rep.tables_match);
  CHECK(rep.matrices_match);
  CHECK(rep.ranks_ok);
  CHECK(rep.ok());
  CHECK(rep.ranks.size() == 4);
}

TEST_CASE("filter names") {
  CHECK(parse_af_filter("paper") == AfFilter::PaperCaseViii);
  CHECK(parse_af_filter("full") == AfFilter::Full);
  CHECK_THROWS_AS(parse_af_filter("other"), std::invalid_argument);
}
