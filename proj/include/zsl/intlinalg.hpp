#pragma once

// Exact integer linear algebra: Smith normal form, ranks over F_p, and
// solvability of M f = c modulo primes outside an excluded set.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace zsl {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  /// Throws std::invalid_argument on ragged input.
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntVector operator*(const IntVector& v) const;
  bool operator==(const IntMatrix& o) const = default;
  /// Appends a column (the augmented matrix [M | c]).
  IntMatrix augmented(const IntVector& c) const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

/// Bareiss elimination.
BigInt determinant(const IntMatrix& m);

struct SnfDecomposition {
  IntMatrix U, D, V;  // U * M * V = D
  std::size_t rank = 0;
  /// d_1 | d_2 | ... | d_rank, all positive.
  std::vector<BigInt> diagonal() const;
};

SnfDecomposition smith_normal_form(const IntMatrix& m);

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);

/// Prime factors of |n| (n != 0), ascending, without repetition.
std::vector<BigInt> prime_factors(const BigInt& n);
bool is_probable_prime(const BigInt& n);

struct FeasibilityVerdict {
  /// M f = c mod n has a solution for some n > 1 coprime to the excluded primes.
  bool feasible = false;
  /// Solvable over Q (then every prime not dividing the invariant factors works).
  bool generic_feasible = false;
  /// When not generic: every prime p for which the system is solvable mod p
  /// divides this value (gcd of the transformed right-hand side beyond the rank).
  BigInt obstruction;
  /// Not generic: all primes with a solution, excluded ones included.
  std::vector<BigInt> feasible_primes;
  /// Smallest usable prime outside the excluded set, when feasible.
  std::optional<BigInt> witness_prime;

  // Data for per-prime queries.
  std::vector<BigInt> diag;       // invariant factors d_1..d_rank
  IntVector transformed_rhs;      // U c
  IntMatrix V;

  bool feasible_mod(const BigInt& p) const;
  /// A solution f mod p (as residues), if one exists.
  std::optional<std::vector<std::uint64_t>> solution_mod(std::uint64_t p) const;
};

/// Throws std::invalid_argument when c does not have one entry per row.
FeasibilityVerdict solvable_coprime_to(const IntMatrix& m, const IntVector& c, const std::set<std::uint64_t>& excluded);

}  // namespace zsl
