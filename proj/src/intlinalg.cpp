#include "zsl/intlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <boost/integer/common_factor_rt.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

namespace zsl {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    for (long long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += x * o(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("IntMatrix: dimension mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::augmented(const IntVector& c) const {
  if (c.size() != rows_) throw std::invalid_argument("IntMatrix: rhs length mismatch");
  IntMatrix out(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    out(i, cols_) = c[i];
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(s, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<BigInt> SnfDecomposition::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(i, k), a(j, k));
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
}

// row_i -= q * row_j
void row_sub(IntMatrix& a, std::size_t i, std::size_t j, const BigInt& q) {
  for (std::size_t k = 0; k < a.cols(); ++k)
    if (a(j, k) != 0) a(i, k) -= q * a(j, k);
}

void col_sub(IntMatrix& a, std::size_t i, std::size_t j, const BigInt& q) {
  for (std::size_t k = 0; k < a.rows(); ++k)
    if (a(k, j) != 0) a(k, i) -= q * a(k, j);
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  SnfDecomposition s{IntMatrix::identity(R), m, IntMatrix::identity(C), 0};
  IntMatrix& A = s.D;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      // pivot: least nonzero absolute value in the trailing block
      std::size_t pi = R, pj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (A(i, j) != 0 && (pi == R || abs(A(i, j)) < abs(A(pi, pj)))) pi = i, pj = j;
      if (pi == R) {
        s.rank = t;
        goto done;
      }
      swap_rows(A, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(A, t, pj);
      swap_cols(s.V, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (A(i, t) == 0) continue;
        BigInt q = A(i, t) / A(t, t);
        row_sub(A, i, t, q);
        row_sub(s.U, i, t, q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (A(t, j) == 0) continue;
        BigInt q = A(t, j) / A(t, t);
        col_sub(A, j, t, q);
        col_sub(s.V, j, t, q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into the pivot row and retry
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (A(i, j) % A(t, t) != 0) {
            row_sub(A, t, i, -1);
            row_sub(s.U, t, i, -1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A(t, t) < 0) {
      for (std::size_t k = 0; k < C; ++k) A(t, k) = -A(t, k);
      for (std::size_t k = 0; k < R; ++k) s.U(t, k) = -s.U(t, k);
    }
    s.rank = t + 1;
  }
done:
  return s;
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::uint64_t> a(R * C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) {
      BigInt x = m(i, j) % p;
      if (x < 0) x += p;
      a[i * C + j] = static_cast<std::uint64_t>(x);
    }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
  };
  auto inv = [&](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = mulmod(r, x);
      x = mulmod(x, x);
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t piv = rank;
    while (piv < R && a[piv * C + col] == 0) ++piv;
    if (piv == R) continue;
    for (std::size_t j = 0; j < C; ++j) std::swap(a[piv * C + j], a[rank * C + j]);
    const std::uint64_t iv = inv(a[rank * C + col]);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == rank || a[i * C + col] == 0) continue;
      const std::uint64_t f = mulmod(a[i * C + col], iv);
      for (std::size_t j = col; j < C; ++j) a[i * C + j] = (a[i * C + j] + p - mulmod(f, a[rank * C + j])) % p;
    }
    ++rank;
  }
  return rank;
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  return boost::multiprecision::miller_rabin_test(n, 32);
}

namespace {

BigInt pollard_rho(const BigInt& n) {
  if (n % 2 == 0) return 2;
  for (BigInt c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    auto f = [&](const BigInt& v) { return (v * v + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = boost::multiprecision::gcd(x > y ? BigInt(x - y) : BigInt(y - x), n);
    }
    if (d != n) return d;
  }
}

void factor_into(BigInt n, std::vector<BigInt>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  BigInt d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<BigInt> prime_factors(const BigInt& value) {
  if (value == 0) throw std::invalid_argument("prime_factors: zero");
  BigInt n = abs(value);
  std::vector<BigInt> out;
  for (std::uint64_t q = 2; q < 100000 && BigInt(q) * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool FeasibilityVerdict::feasible_mod(const BigInt& p) const {
  for (std::size_t i = 0; i < transformed_rhs.size(); ++i) {
    const bool pivot_unit = i < diag.size() && diag[i] % p != 0;
    if (!pivot_unit && transformed_rhs[i] % p != 0) return false;
  }
  return true;
}

std::optional<std::vector<std::uint64_t>> FeasibilityVerdict::solution_mod(std::uint64_t p) const {
  if (!feasible_mod(p)) return std::nullopt;
  auto red = [p](const BigInt& x) {
    BigInt r = x % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  };
  auto inv = [p](std::uint64_t x) {
    // extended Euclid on signed 128-bit
    __int128 a = x, b = p, u = 1, v = 0;
    while (b) {
      __int128 q = a / b;
      std::swap(a -= q * b, b);
      std::swap(u -= q * v, v);
    }
    u %= static_cast<__int128>(p);
    if (u < 0) u += p;
    return static_cast<std::uint64_t>(u);
  };
  std::vector<BigInt> y(V.rows(), 0);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const std::uint64_t d = red(diag[i]);
    if (d) y[i] = BigInt(static_cast<std::uint64_t>(static_cast<unsigned __int128>(red(transformed_rhs[i])) * inv(d) % p));
  }
  std::vector<std::uint64_t> f(V.rows());
  auto fv = V * y;
  for (std::size_t i = 0; i < fv.size(); ++i) f[i] = red(fv[i]);
  return f;
}

FeasibilityVerdict solvable_coprime_to(const IntMatrix& m, const IntVector& c, const std::set<std::uint64_t>& excluded) {
  if (c.size() != m.rows()) throw std::invalid_argument("solvable_coprime_to: rhs length does not match rows");
  auto snf = smith_normal_form(m);
  FeasibilityVerdict v;
  v.diag = snf.diagonal();
  v.transformed_rhs = snf.U * c;
  v.V = snf.V;
  BigInt g = 0;
  for (std::size_t i = snf.rank; i < v.transformed_rhs.size(); ++i)
    g = boost::multiprecision::gcd(g, abs(v.transformed_rhs[i]));
  v.generic_feasible = (g == 0);
  if (v.generic_feasible) {
    // only primes dividing some d_i can fail; the scan stops quickly
    for (std::uint64_t p = 2;; ++p) {
      if (!is_probable_prime(p) || excluded.count(p)) continue;
      if (v.feasible_mod(p)) {
        v.witness_prime = BigInt(p);
        break;
      }
    }
    v.feasible = true;
    return v;
  }
  v.obstruction = g;
  if (g != 1)
    for (const auto& p : prime_factors(g))
      if (v.feasible_mod(p)) v.feasible_primes.push_back(p);
  for (const auto& p : v.feasible_primes)
    if (p > UINT64_MAX || !excluded.count(static_cast<std::uint64_t>(p))) {
      v.witness_prime = p;
      v.feasible = true;
      break;
    }
  return v;
}

}  // namespace zsl
