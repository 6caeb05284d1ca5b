#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zsl/intlinalg.hpp"

using namespace zsl;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = lo + static_cast<int>(rng() % (hi - lo + 1));
  return m;
}

bool unimodular(const IntMatrix& m) {
  const BigInt d = determinant(m);
  return d == 1 || d == -1;
}

void check_snf(const IntMatrix& m) {
  const auto s = smith_normal_form(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(unimodular(s.U));
  CHECK(unimodular(s.V));
  const auto d = s.diagonal();
  CHECK(d.size() == s.rank);
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j || i >= s.rank) CHECK(s.D(i, j) == 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] > 0);
    if (i + 1 < d.size()) CHECK(d[i + 1] % d[i] == 0);
  }
}

}  // namespace

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix{{2, 0}, {0, 3}}) == 6);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK(determinant(IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}) == -1);
  CHECK(determinant(IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}) == 4);
}

TEST_CASE("smith normal form: known cases") {
  auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(s.diagonal() == std::vector<BigInt>{1, 6});
  s = smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(s.diagonal() == std::vector<BigInt>{2, 6, 12});
  s = smith_normal_form(IntMatrix{{0, 0}, {0, 0}});
  CHECK(s.rank == 0);
  check_snf(IntMatrix{{0, 0, 5}, {0, 0, 0}});
}

TEST_CASE("smith normal form reconstruction on random matrices") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 6;
    check_snf(random_matrix(rng, r, c, -6, 6));
  }
  for (int t = 0; t < 40; ++t) check_snf(random_matrix(rng, 12, 7, 0, 1));  // 0/1 like the labelling systems
  for (int t = 0; t < 10; ++t) check_snf(random_matrix(rng, 5, 5, -1000000, 1000000));
}

TEST_CASE("rank mod p agrees with elimination oracle") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, -3, 3);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      // rank = number of invariant factors not divisible by p
      std::size_t r = 0;
      for (const auto& d : smith_normal_form(m).diagonal()) r += (d % p) != 0;
      CHECK(rank_mod_p(m, p) == r);
    }
  }
}

TEST_CASE("primes and factoring") {
  CHECK(is_probable_prime(BigInt(2)));
  CHECK(is_probable_prime(BigInt(1000000007)));
  CHECK_FALSE(is_probable_prime(BigInt(1)));
  CHECK_FALSE(is_probable_prime(BigInt(561)));
  CHECK(prime_factors(BigInt(360)) == std::vector<BigInt>{2, 3, 5});
  CHECK(prime_factors(BigInt(-49)) == std::vector<BigInt>{7});
  const BigInt big = BigInt(1000000007) * BigInt(998244353) * 6;
  CHECK(prime_factors(big) == std::vector<BigInt>{2, 3, 998244353, 1000000007});
}

TEST_CASE("feasibility: hand-checked systems") {
  auto v = solvable_coprime_to(IntMatrix{{3}}, {1}, {2, 3});
  CHECK(v.feasible);
  CHECK(v.generic_feasible);
  CHECK(*v.witness_prime == 5);
  v = solvable_coprime_to(IntMatrix{{1}, {1}}, {1, 0}, {2, 3});
  CHECK_FALSE(v.feasible);
  CHECK(v.obstruction == 1);
  // f = 1 and f = 7: only p | 6 works
  v = solvable_coprime_to(IntMatrix{{1}, {1}}, {1, 7}, {2, 3});
  CHECK_FALSE(v.feasible);
  CHECK(v.feasible_primes == std::vector<BigInt>{2, 3});
  // f = 1 and f = 11: p = 2, 5
  v = solvable_coprime_to(IntMatrix{{1}, {1}}, {1, 11}, {2, 3});
  CHECK(v.feasible);
  CHECK(*v.witness_prime == 5);
  CHECK_THROWS_AS(solvable_coprime_to(IntMatrix{{1}}, {1, 2}, {}), std::invalid_argument);
}

TEST_CASE("feasibility mod p agrees with Gaussian elimination for primes below 200") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 120; ++t) {
    const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 5;
    const auto m = random_matrix(rng, r, c, -2, 3);
    IntVector rhs(r);
    for (auto& x : rhs) x = static_cast<int>(rng() % 5) - 2;
    const auto v = solvable_coprime_to(m, rhs, {2, 3});
    bool any = false;
    for (std::uint64_t p = 2; p < 200; ++p) {
      if (!is_probable_prime(BigInt(p))) continue;
      const bool g = oracle::gauss_feasible(m, rhs, p);
      CHECK(v.feasible_mod(BigInt(p)) == g);
      if (g && p > 3) any = true;
      if (g) {
        auto f = v.solution_mod(p);
        REQUIRE(f);
        // M f = c mod p
        for (std::size_t i = 0; i < r; ++i) {
          BigInt s = 0;
          for (std::size_t j = 0; j < c; ++j) s += m(i, j) * (*f)[j];
          CHECK(((s - rhs[i]) % p) == 0);
        }
      }
    }
    if (any) CHECK(v.feasible);
    if (v.feasible && *v.witness_prime < 200) CHECK(any);
  }
}

TEST_CASE("brute-force f search agrees with the verdict over Z_5 and Z_7") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 80; ++t) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 4;
    const auto m = random_matrix(rng, r, c, 0, 2);
    IntVector rhs(r, 1);
    const auto v = solvable_coprime_to(m, rhs, {2, 3});
    for (std::uint64_t p : {5, 7}) CHECK(v.feasible_mod(BigInt(p)) == oracle::brute_solution(m, rhs, p).has_value());
  }
}
