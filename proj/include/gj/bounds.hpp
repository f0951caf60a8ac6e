#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gj/fraction.hpp"
#include "gj/linalg.hpp"

namespace gj {

struct HalvingSequence {
  int q = 0;
  int f_index = 0;
  std::vector<int> a;
};

HalvingSequence construct_sequence(int q, int f_index);
// Throws InvariantError naming the first violated condition.
void validate_sequence(const HalvingSequence& seq);

// Rows R_0..R_{q-1} of the reduced basis matrix, columns indexed by pi_0..pi_{q-1}.
IntMatrix basis_matrix(const HalvingSequence& seq);
Integer basis_determinant(const HalvingSequence& seq);

struct BoundRow {
  int q = 0;
  int f_index = 0;
  std::string statistic;
  std::string value;
};

struct UpperBoundReport {
  int q = 0;
  int f_index = 0;
  long bases = 0;     // nonsingular bases examined
  long singular = 0;  // sampled column/row choices that were singular
  Integer max_det = 0;
  long det_bound_violations = 0;     // |det| > 10^{q/4}
  long hadamard_bound_violations = 0;  // |det| > sqrt5^{n-m-1} sqrt2^{m+2}
  bool empty() const { return bases == 0 && singular == 0; }
  std::vector<BoundRow> rows() const;
};

// Random basis submatrices of the standard-form system.
UpperBoundReport check_upper_bound(int q, int f_index, long sample_count, std::uint64_t seed = 1);
// Every basis; only practical for q <= 7.
UpperBoundReport check_upper_bound_exhaustive(int q, int f_index);

struct EmpiricalComplexity {
  int q = 0;
  Integer d_ext = 0;
  Integer d_ver = 0;
};

EmpiricalComplexity empirical_complexity(int q);

// |d| <= 10^{q/4}, compared exactly as d^4 <= 10^q.
bool within_det_bound(const Integer& d, int q);

std::string to_jsonl(const std::vector<BoundRow>& rows);

}  // namespace gj
