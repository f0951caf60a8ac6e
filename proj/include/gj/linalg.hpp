#pragma once

#include <cstdint>
#include <vector>

#include "gj/fraction.hpp"

namespace gj {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

// Row echelon basis built one row at a time over the integers
// (fraction-free: rows are kept primitive).
class EchelonBasis {
 public:
  explicit EchelonBasis(int ncols) : ncols_(ncols) {}

  // Returns true if the row was independent of the basis and was added.
  bool add(IntVector row);
  bool add(const Vector& row);
  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }

 private:
  int ncols_;
  std::vector<IntVector> rows_;
  std::vector<int> pivots_;
};

// Same, modulo a fixed 61-bit prime.  Rank mod p never exceeds the rank
// over Q, so reaching full rank here certifies full rank exactly.
class ModularEchelon {
 public:
  explicit ModularEchelon(int ncols) : ncols_(ncols) {}
  bool add(const std::vector<std::int64_t>& row);
  int rank() const { return static_cast<int>(rows_.size()); }

  static constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

 private:
  int ncols_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<int> pivots_;
};

int rank(const Matrix& m);
int rank(const IntMatrix& m);
Integer determinant(IntMatrix m);
Fraction determinant(const Matrix& m);

// Basis of {x : m x = 0}, one vector per column of the kernel.
Matrix nullspace(const Matrix& m, int ncols);

// Any solution of m x = b, or empty optional-like flag false when none.
bool solve_particular(const Matrix& m, const Vector& b, int ncols, Vector& x);

// Full column rank test for small-integer rows.  Uses the modular
// certificate first and falls back to exact elimination.
bool has_full_column_rank(const std::vector<std::vector<std::int64_t>>& rows, int ncols);
int exact_rank(const std::vector<std::vector<std::int64_t>>& rows, int ncols);

}  // namespace gj
