#include "gj/linalg.hpp"

#include <utility>

namespace gj {

namespace {

void make_primitive(IntVector& r) {
  Integer g = 0;
  for (auto& x : r)
    if (x != 0) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
  if (g > 1)
    for (auto& x : r)
      if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;
constexpr u64 P = ModularEchelon::kPrime;

u64 mulmod(u64 a, u64 b) {
  u128 t = static_cast<u128>(a) * b;
  u64 lo = static_cast<u64>(t & P), hi = static_cast<u64>(t >> 61);
  u64 r = lo + hi;
  return r >= P ? r - P : r;
}
u64 submod(u64 a, u64 b) { return a >= b ? a - b : a + P - b; }
u64 powmod(u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
u64 to_mod(std::int64_t v) {
  return v >= 0 ? static_cast<u64>(v) % P : P - (static_cast<u64>(-v) % P);
}

}  // namespace

bool EchelonBasis::add(IntVector row) {
  for (size_t i = 0; i < rows_.size(); ++i) {
    int c = pivots_[i];
    if (row[c] == 0) continue;
    const IntVector& b = rows_[i];
    Integer a = b[c], m = row[c];
    for (int j = 0; j < ncols_; ++j) {
      if (b[j] == 0) {
        if (row[j] != 0) row[j] *= a;
      } else {
        row[j] = row[j] * a - m * b[j];
      }
    }
    make_primitive(row);
  }
  int piv = -1;
  for (int j = 0; j < ncols_; ++j)
    if (row[j] != 0) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  rows_.push_back(std::move(row));
  pivots_.push_back(piv);
  return true;
}

bool EchelonBasis::add(const Vector& row) {
  Integer den = 1;
  for (auto& x : row) den = lcm(den, x.get_den());
  IntVector r(row.size());
  for (size_t j = 0; j < row.size(); ++j) r[j] = row[j].get_num() * (den / row[j].get_den());
  return add(std::move(r));
}

bool ModularEchelon::add(const std::vector<std::int64_t>& in) {
  std::vector<u64> row(ncols_);
  for (int j = 0; j < ncols_; ++j) row[j] = to_mod(in[j]);
  for (size_t i = 0; i < rows_.size(); ++i) {
    int c = pivots_[i];
    if (row[c] == 0) continue;
    u64 m = row[c];  // basis rows are normalized to pivot 1
    const auto& b = rows_[i];
    for (int j = c; j < ncols_; ++j)
      if (b[j]) row[j] = submod(row[j], mulmod(m, b[j]));
  }
  int piv = -1;
  for (int j = 0; j < ncols_; ++j)
    if (row[j]) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  u64 inv = powmod(row[piv], P - 2);
  for (int j = piv; j < ncols_; ++j)
    if (row[j]) row[j] = mulmod(row[j], inv);
  rows_.push_back(std::move(row));
  pivots_.push_back(piv);
  return true;
}

int rank(const IntMatrix& m) {
  if (m.empty()) return 0;
  EchelonBasis e(static_cast<int>(m[0].size()));
  for (auto& r : m) e.add(r);
  return e.rank();
}

int rank(const Matrix& m) {
  if (m.empty()) return 0;
  EchelonBasis e(static_cast<int>(m[0].size()));
  for (auto& r : m) e.add(r);
  return e.rank();
}

// Bareiss fraction-free elimination.
Integer determinant(IntMatrix a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Fraction determinant(const Matrix& m) {
  int n = static_cast<int>(m.size());
  Integer den = 1;
  IntMatrix a(n, IntVector(n));
  for (int i = 0; i < n; ++i) {
    Integer rd = 1;
    for (auto& x : m[i]) rd = lcm(rd, x.get_den());
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (rd / m[i][j].get_den());
    den *= rd;
  }
  Fraction r(determinant(std::move(a)), den);
  r.canonicalize();
  return r;
}

namespace {

// Reduced row echelon form in place over Q; returns pivot columns.
std::vector<int> rref(Matrix& a, int ncols) {
  std::vector<int> piv;
  int r = 0;
  int nrows = static_cast<int>(a.size());
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int s = r;
    while (s < nrows && a[s][c] == 0) ++s;
    if (s == nrows) continue;
    std::swap(a[r], a[s]);
    Fraction inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Fraction m = a[i][c];
      for (size_t j = c; j < a[i].size(); ++j)
        if (a[r][j] != 0) a[i][j] -= m * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

Matrix nullspace(const Matrix& m, int ncols) {
  Matrix a = m;
  auto piv = rref(a, ncols);
  std::vector<int> is_piv(ncols, -1);
  for (size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = static_cast<int>(i);
  Matrix basis;
  for (int c = 0; c < ncols; ++c) {
    if (is_piv[c] >= 0) continue;
    Vector v(ncols);
    v[c] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve_particular(const Matrix& m, const Vector& b, int ncols, Vector& x) {
  Matrix a = m;
  for (size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  auto piv = rref(a, ncols);
  for (size_t i = piv.size(); i < a.size(); ++i)
    if (a[i][ncols] != 0) return false;
  x.assign(ncols, 0);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = a[i][ncols];
  return true;
}

int exact_rank(const std::vector<std::vector<std::int64_t>>& rows, int ncols) {
  EchelonBasis e(ncols);
  for (auto& r : rows) {
    IntVector v(ncols);
    for (int j = 0; j < ncols; ++j) v[j] = static_cast<long>(r[j]);
    e.add(std::move(v));
    if (e.rank() == ncols) break;
  }
  return e.rank();
}

bool has_full_column_rank(const std::vector<std::vector<std::int64_t>>& rows, int ncols) {
  if (static_cast<int>(rows.size()) < ncols) return false;
  ModularEchelon me(ncols);
  for (auto& r : rows) {
    me.add(r);
    if (me.rank() == ncols) return true;
  }
  return exact_rank(rows, ncols) == ncols;
}

}  // namespace gj
