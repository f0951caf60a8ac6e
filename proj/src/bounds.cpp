#include "gj/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "gj/complex2d.hpp"
#include "gj/errors.hpp"
#include "gj/groupfn.hpp"
#include "gj/polytope.hpp"

namespace gj {

namespace {

int half_mod(int x, int q) {
  // q is odd, so 2 is invertible and (q+1)/2 is its inverse.
  return static_cast<int>((static_cast<long>(x) * ((q + 1) / 2)) % q);
}

// Standard-form system over pi_0..pi_{q-1}: equality rows (pi_0 = 0 and
// one symmetry row per unordered pair) and subadditivity rows for
// 1 <= x <= y <= q-1, each of which carries its own slack column.
struct StandardForm {
  int q = 0;
  IntMatrix equalities;
  IntMatrix subadditive;
  int symmetric_rows = 0;
};

StandardForm standard_form(int q, int f_index) {
  if (q < 2) throw ArgumentError("q must be at least 2");
  if (f_index <= 0 || f_index >= q) throw ArgumentError("f_index must lie in 1..q-1");
  StandardForm sf;
  sf.q = q;
  IntVector e0(q, 0);
  e0[0] = 1;
  sf.equalities.push_back(e0);
  for (int x = 0; x < q; ++x) {
    int y = mod(f_index - x, q);
    if (y < x) continue;
    IntVector row(q, 0);
    row[x] += 1;
    row[y] += 1;
    sf.equalities.push_back(row);
    ++sf.symmetric_rows;
  }
  for (int x = 1; x < q; ++x)
    for (int y = x; y < q; ++y) {
      IntVector row(q, 0);
      row[x] += 1;
      row[y] += 1;
      row[mod(x + y, q)] -= 1;
      sf.subadditive.push_back(row);
    }
  return sf;
}

Integer ipow(long base, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

void record(UpperBoundReport& rep, const StandardForm& sf, const IntMatrix& square) {
  Integer d = abs(determinant(square));
  if (d == 0) {
    ++rep.singular;
    return;
  }
  ++rep.bases;
  if (d > rep.max_det) rep.max_det = d;
  if (!within_det_bound(d, sf.q)) ++rep.det_bound_violations;
  long n = static_cast<long>(square.size());
  long m = sf.symmetric_rows;
  Integer hadamard_sq = ipow(5, std::max(0L, n - m - 1)) * ipow(2, m + 2);
  if (d * d > hadamard_sq) ++rep.hadamard_bound_violations;
}

IntMatrix submatrix(const IntMatrix& rows, const std::vector<int>& cols) {
  IntMatrix out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    IntVector v;
    v.reserve(cols.size());
    for (int c : cols) v.push_back(r[c]);
    out.push_back(std::move(v));
  }
  return out;
}

// Calls fn on every k-subset of {0..n-1}.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

HalvingSequence construct_sequence(int q, int f_index) {
  if (q < 3 || q % 2 == 0) throw ArgumentError("q must be odd and at least 3");
  if (f_index <= 0 || f_index >= q) throw ArgumentError("f_index must lie in 1..q-1");
  if (std::gcd(q, f_index) != 1) throw ArgumentError("f_index and q must be coprime");
  HalvingSequence seq{q, f_index, {0, f_index, half_mod(f_index, q)}};
  std::vector<char> used(q, 0);
  for (int v : seq.a) used[v] = 1;
  while (static_cast<int>(seq.a.size()) < q) {
    int next = -1;
    for (int s : seq.a) {
      int h = half_mod(s, q);
      if (!used[h]) {
        next = h;
        break;
      }
    }
    if (next < 0) throw InvariantError("no eligible element to halve");
    int partner = mod(f_index - next, q);
    seq.a.push_back(next);
    seq.a.push_back(partner);
    used[next] = used[partner] = 1;
  }
  validate_sequence(seq);
  return seq;
}

void validate_sequence(const HalvingSequence& seq) {
  const int q = seq.q;
  const auto& a = seq.a;
  if (static_cast<int>(a.size()) != q) throw InvariantError("sequence length differs from q");
  if (a[0] != 0) throw InvariantError("a_0 must be 0");
  if (a[1] != seq.f_index) throw InvariantError("a_1 must be f_index");
  if (a[2] != half_mod(seq.f_index, q)) throw InvariantError("a_2 must be f_index/2");
  for (int i = 3; i < q; ++i) {
    if (i % 2 == 1) {
      bool ok = false;
      for (int j = 0; j < i && !ok; ++j) ok = a[i] == half_mod(a[j], q);
      if (!ok) throw InvariantError("a_" + std::to_string(i) + " is not a half of an earlier entry");
    } else if (a[i] != mod(seq.f_index - a[i - 1], q)) {
      throw InvariantError("a_" + std::to_string(i) + " is not f_index - a_" + std::to_string(i - 1));
    }
  }
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < q; ++i)
    if (sorted[i] != i) throw InvariantError("sequence is not a permutation of 0..q-1");
}

IntMatrix basis_matrix(const HalvingSequence& seq) {
  const int q = seq.q;
  const auto& a = seq.a;
  IntMatrix b(q, IntVector(q, 0));
  b[0][a[0]] = 1;
  b[2][a[2]] = 2;
  for (int i = 1; i < q; ++i) {
    if (i == 2) continue;
    if (i == 1 || i % 2 == 0) {
      b[i][a[i]] += 1;
      b[i][a[i - 1]] += 1;
    } else {
      b[i][a[i]] += -2;
      b[i][mod(2L * a[i], q)] += 1;
    }
  }
  return b;
}

Integer basis_determinant(const HalvingSequence& seq) {
  validate_sequence(seq);
  return abs(determinant(basis_matrix(seq)));
}

bool within_det_bound(const Integer& d, int q) {
  Integer d4 = d * d;
  d4 *= d4;
  return d4 <= ipow(10, q);
}

UpperBoundReport check_upper_bound(int q, int f_index, long sample_count, std::uint64_t seed) {
  StandardForm sf = standard_form(q, f_index);
  UpperBoundReport rep;
  rep.q = q;
  rep.f_index = f_index;
  if (sample_count <= 0) return rep;
  std::mt19937_64 rng(seed);
  const int ne = static_cast<int>(sf.equalities.size());
  const int ns = static_cast<int>(sf.subadditive.size());
  std::vector<int> row_ids(ns);
  std::iota(row_ids.begin(), row_ids.end(), 0);
  std::vector<int> col_ids(q);
  std::iota(col_ids.begin(), col_ids.end(), 0);
  for (long s = 0; s < sample_count; ++s) {
    int j = std::uniform_int_distribution<int>(0, q - ne)(rng);
    std::shuffle(row_ids.begin(), row_ids.end(), rng);
    IntMatrix rows = sf.equalities;
    for (int i = 0; i < j; ++i) rows.push_back(sf.subadditive[row_ids[i]]);
    // Pick columns in random order, keeping those that raise the rank.
    std::shuffle(col_ids.begin(), col_ids.end(), rng);
    EchelonBasis basis(static_cast<int>(rows.size()));
    std::vector<int> chosen;
    for (int c : col_ids) {
      IntVector col;
      col.reserve(rows.size());
      for (const auto& r : rows) col.push_back(r[c]);
      if (basis.add(col)) chosen.push_back(c);
      if (chosen.size() == rows.size()) break;
    }
    if (chosen.size() < rows.size()) {
      ++rep.singular;
      continue;
    }
    std::sort(chosen.begin(), chosen.end());
    record(rep, sf, submatrix(rows, chosen));
  }
  return rep;
}

UpperBoundReport check_upper_bound_exhaustive(int q, int f_index) {
  StandardForm sf = standard_form(q, f_index);
  UpperBoundReport rep;
  rep.q = q;
  rep.f_index = f_index;
  const int ne = static_cast<int>(sf.equalities.size());
  const int ns = static_cast<int>(sf.subadditive.size());
  for (int j = 0; j <= q - ne; ++j)
    for_each_subset(ns, j, [&](const std::vector<int>& rsel) {
      IntMatrix rows = sf.equalities;
      for (int i : rsel) rows.push_back(sf.subadditive[i]);
      for_each_subset(q, ne + j, [&](const std::vector<int>& csel) {
        Integer d = determinant(submatrix(rows, csel));
        if (d != 0) record(rep, sf, submatrix(rows, csel));
      });
    });
  return rep;
}

std::vector<BoundRow> UpperBoundReport::rows() const {
  if (empty()) return {};
  return {{q, f_index, "bases", std::to_string(bases)},
          {q, f_index, "singular", std::to_string(singular)},
          {q, f_index, "max_det", max_det.get_str()},
          {q, f_index, "det_bound_violations", std::to_string(det_bound_violations)},
          {q, f_index, "hadamard_bound_violations", std::to_string(hadamard_bound_violations)}};
}

EmpiricalComplexity empirical_complexity(int q) {
  if (q < 2) throw ArgumentError("q must be at least 2");
  EmpiricalComplexity out;
  out.q = q;
  for (int f = 1; f <= q / 2; ++f) {
    Polytope p = build_minimal_function_polytope(q, f);
    for (const Vector& v : enumerate_vertices(p)) {
      GridFunction fn = function_from_vertex(q, f, v);
      Integer d = arithmetic_complexity(fn);
      if (d > out.d_ver) out.d_ver = d;
      if (d > out.d_ext && is_extreme(fn).extreme()) out.d_ext = d;
    }
  }
  return out;
}

std::string to_jsonl(const std::vector<BoundRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    nlohmann::json j = {{"q", r.q}, {"f_index", r.f_index}, {"statistic", r.statistic}, {"value", r.value}};
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace gj
