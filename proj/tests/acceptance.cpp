// One line per acceptance criterion.  With arguments, only the listed
// criterion numbers run.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gj/bounds.hpp"
#include "gj/complex2d.hpp"
#include "gj/mipgen.hpp"
#include "gj/patterns.hpp"
#include "gj/polytope.hpp"
#include "gj/search.hpp"

using namespace gj;

namespace {

enum class Status { Pass, Fail, NotReproducible };

struct Outcome {
  Status status = Status::Fail;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string join(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<GridFunction> vertex_functions(int q, int f) {
  std::vector<GridFunction> out;
  for (const auto& v : enumerate_vertices(build_minimal_function_polytope(q, f)))
    out.push_back(function_from_vertex(q, f, v));
  return out;
}

Outcome vertex_counts() {
  const std::vector<long> expected{2, 4, 7, 18, 40, 68, 251, 726};
  std::vector<long> got;
  auto t0 = Clock::now();
  for (int q = 5; q <= 19; q += 2)
    got.push_back(static_cast<long>(enumerate_vertices(build_minimal_function_polytope(q, 1)).size()));
  double t = seconds_since(t0);
  bool ok = got == expected && t < 600;
  return {ok ? Status::Pass : Status::Fail, "vertices q=5..19 f=1/q: " + join(got) + " in " + std::to_string(t) + " s"};
}

Outcome redundancy_counts() {
  const std::vector<long> reference{7, 10, 14, 20, 27, 35, 45, 56, 68};
  std::vector<long> ours, facets;
  bool convention = true;
  int i = 0;
  for (int q = 5; q <= 21; q += 2, ++i) {
    Polytope r = remove_redundant(build_minimal_function_polytope(q, 1));
    ours.push_back(r.constraint_count());
    facets.push_back(static_cast<long>(r.inequalities.size()));
    // The reference counts include the (q+5)/2 equalities of the closed
    // vector pi_0..pi_q.
    if (facets.back() + (q + 5) / 2 != reference[i]) convention = false;
  }
  return {convention ? Status::Pass : Status::Fail,
          "facets " + join(facets) + "; facets + (q+5)/2 reproduces " + join(reference) +
              "; facets + independent equalities over pi_1..pi_{q-1} = " + join(ours) + " (reference - 2)"};
}

Outcome dimensions() {
  std::vector<long> got;
  for (int q = 5; q <= 19; q += 2) got.push_back(affine_dimension(build_minimal_function_polytope(q, 1)));
  bool ok = got == std::vector<long>{1, 2, 3, 4, 5, 6, 7, 8};
  return {ok ? Status::Pass : Status::Fail, "affine dimensions q=5..19: " + join(got)};
}

Outcome oracle_equivalence() {
  long vertices = 0, disagreements = 0, extreme = 0;
  for (int q = 2; q <= 13; ++q)
    for (int f = 1; f < q; ++f)
      for (const GridFunction& fn : vertex_functions(q, f)) {
        ++vertices;
        bool e = is_extreme(fn).extreme();
        extreme += e;
        if (e != oversampling_vertex_test(fn, 3) || e != oversampling_vertex_test(fn, 4)) ++disagreements;
      }
  return {disagreements == 0 ? Status::Pass : Status::Fail,
          std::to_string(vertices) + " vertices (q<=13, all f), " + std::to_string(extreme) + " extreme, " +
              std::to_string(disagreements) + " disagreements"};
}

Outcome complexity_table() {
  const std::vector<std::pair<long, long>> expected{{21, 21}, {30, 30}, {35, 35}, {48, 48},
                                                    {51, 51}, {64, 70}, {63, 65}};
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (int q = 10; q <= 16; ++q) {
    EmpiricalComplexity c = empirical_complexity(q);
    auto [de, dv] = expected[q - 10];
    if (c.d_ext != de || c.d_ver != dv) ok = false;
    detail += "q=" + std::to_string(q) + ":(" + c.d_ext.get_str() + "," + c.d_ver.get_str() + ") ";
  }
  double t = seconds_since(t0);
  ok = ok && t < 1800;
  return {ok ? Status::Pass : Status::Fail, detail + "in " + std::to_string(t) + " s"};
}

Outcome determinant_bounds() {
  bool ok = true;
  long sequences = 0;
  for (int q = 3; q <= 19; q += 2)
    for (int f = 1; f < q; ++f) {
      if (std::gcd(q, f) != 1) continue;
      ++sequences;
      Integer expect = 1;
      for (int i = 0; i < (q - 1) / 2; ++i) expect *= 2;
      if (basis_determinant(construct_sequence(q, f)) != expect) ok = false;
    }
  if (basis_determinant(construct_sequence(11, 3)) != 32) ok = false;
  long bases = 0, violations = 0;
  for (int f = 1; f < 5; ++f) {
    UpperBoundReport r = check_upper_bound_exhaustive(5, f);
    bases += r.bases;
    violations += r.det_bound_violations;
  }
  long sampled = 0;
  for (int q = 6; q <= 13; ++q)
    for (int f = 1; f < q; ++f) {
      UpperBoundReport r = check_upper_bound(q, f, 10000, 1000 * q + f);
      sampled += r.bases;
      violations += r.det_bound_violations;
    }
  ok = ok && violations == 0;
  return {ok ? Status::Pass : Status::Fail,
          std::to_string(sequences) + " sequences with |det| = 2^((q-1)/2); q=5 exhaustive " + std::to_string(bases) +
              " bases, q=6..13 sampled " + std::to_string(sampled) + " bases, " + std::to_string(violations) +
              " violations of 10^(q/4)"};
}

Outcome pattern_search() {
  bool ok = true;
  std::string detail;
  for (auto [r, k] : {std::pair{1, 6}, std::pair{4, 10}}) {
    auto t0 = Clock::now();
    Painting p = build_prescribed_painting(r);
    ComponentPartition c = covered_components(p);
    std::vector<bool> direct(p.q(), false);
    for (FaceKind kind : {FaceKind::LowerTriangle, FaceKind::UpperTriangle})
      for (const Face& face : p.faces(kind))
        if (p.color(face) == Color::Green) {
          Projections pr = projections(face, p.q());
          direct[pr.p1] = direct[pr.p2] = direct[pr.p3] = true;
        }
    bool all_direct = std::all_of(direct.begin(), direct.end(), [](bool b) { return b; });
    auto fns = pattern_extreme(r, k);
    int exact_k = 0;
    for (const auto& fn : fns)
      if (number_of_slopes(fn) == k && fn.q() == pattern_q(r) && is_extreme(fn).extreme()) ++exact_k;
    double t = seconds_since(t0);
    bool this_ok = c.count() == 2 * (r + 2) && all_direct && exact_k >= 1 && t < 600;
    ok = ok && this_ok;
    detail += "r=" + std::to_string(r) + ": q=" + std::to_string(p.q()) + ", " + std::to_string(c.count()) +
              " components, all directly covered " + (all_direct ? "yes" : "no") + ", " + std::to_string(exact_k) +
              " extreme " + std::to_string(k) + "-slope functions in " + std::to_string(t) + " s; ";
  }
  return {ok ? Status::Pass : Status::Fail, detail};
}

Outcome slope_properties() {
  std::mt19937 rng(2024);
  long round_trips = 0, failures = 0, vertices = 0, order_violations = 0;
  for (int r = 1; r <= 5; ++r) {
    for (int trial = 0; trial < 100; ++trial) {
      Vector s(r + 2);
      for (auto& x : s) {
        x = Fraction(static_cast<long>(rng() % 201) - 100, 1 + static_cast<long>(rng() % 50));
        x.canonicalize();
      }
      ++round_trips;
      if (slopes_from_pi(r, pi_from_slopes(r, s)) != s) ++failures;
    }
    for (const auto& v : enumerate_vertices(build_slope_polytope(r))) {
      ++vertices;
      for (int j = 0; j + 1 < r + 2; ++j)
        if (v[j] < v[j + 1]) {
          ++order_violations;
          break;
        }
    }
  }
  bool ok = failures == 0 && order_violations == 0;
  return {ok ? Status::Pass : Status::Fail,
          std::to_string(round_trips) + " round trips, " + std::to_string(failures) + " failures; " +
              std::to_string(vertices) + " slope-polytope vertices, " + std::to_string(order_violations) +
              " ordering violations"};
}

// Shared with criterion 10.
std::vector<FoundFunction> q25_results;
double q25_seconds = -1;

void run_q25() {
  if (q25_seconds >= 0) return;
  SearchConfig c;
  c.q = 25;
  c.f_index = 7;
  c.target_slopes = 6;
  c.mode = SearchMode::Combined;
  c.exp_dim_threshold = 11;
  auto t0 = Clock::now();
  q25_results = combined_search(c);
  q25_seconds = seconds_since(t0);
}

Outcome search_soundness() {
  long emitted = 0, false_positives = 0;
  for (int q = 3; q <= 13; ++q)
    for (int f = 1; f < q; ++f) {
      SearchConfig c;
      c.q = q;
      c.f_index = f;
      c.target_slopes = 2;
      c.mode = SearchMode::VertexFilter;
      for (const auto& r : vertex_filtering_search(c)) {
        ++emitted;
        if (!oversampling_vertex_test(r.fn, 3)) ++false_positives;
      }
    }
  long combined = 0;
  for (auto [q, f, k] : {std::tuple{15, 4, 4}, std::tuple{17, 5, 4}, std::tuple{19, 6, 5}, std::tuple{21, 8, 5}}) {
    SearchConfig c;
    c.q = q;
    c.f_index = f;
    c.target_slopes = k;
    c.mode = SearchMode::Combined;
    c.exp_dim_threshold = 11;
    for (const auto& r : combined_search(c)) {
      ++combined;
      if (!oversampling_vertex_test(r.fn, 3)) ++false_positives;
    }
  }
  run_q25();
  for (const auto& r : q25_results) {
    ++combined;
    if (!oversampling_vertex_test(r.fn, 3)) ++false_positives;
  }
  return {false_positives == 0 ? Status::Pass : Status::Fail,
          std::to_string(emitted) + " vertex-filter results (q<=13, all f) and " + std::to_string(combined) +
              " combined results (q=15..25 spot checks), " + std::to_string(false_positives) + " false positives"};
}

Outcome q25_search() {
  run_q25();
  long six = 0;
  for (const auto& r : q25_results)
    if (r.slopes >= 6 && is_extreme(r.fn).extreme()) ++six;
  bool ok = six >= 1 && q25_seconds < 1800;
  return {ok ? Status::Pass : Status::Fail, "q=25 f=7/25 k=6 threshold 11: " + std::to_string(six) +
                                                " six-slope extreme functions in " + std::to_string(q25_seconds) +
                                                " s"};
}

Outcome mip_checks() {
  bool ok = true;
  std::string detail;
  int round_trips = 0;
  for (CoverType t : {CoverType::Standard, CoverType::Fulldim, CoverType::FulldimCovers}) {
    MipModel m = build_mip(37, 25, 5, 2, 12, t);
    std::stringstream s;
    write_lp(m, s);
    if (equivalent(read_lp(s), m)) ++round_trips;
  }
  {
    MipModel m = build_mip_2q(37, 25, 11, 4, 2, 4);
    std::stringstream s;
    write_lp(m, s);
    if (equivalent(read_lp(s), m)) ++round_trips;
  }
  ok = ok && round_trips == 4;
  detail += std::to_string(round_trips) + "/4 LP round trips; ";
  MipModel g = build_mip(5, 3, 2, 2, 12, CoverType::Standard);
  size_t gv = check_assignment(g, assignment_from_function(gmic(5, 3), g)).size();
  ok = ok && gv == 0;
  detail += "GMIC q=5 eps=1/12: " + std::to_string(gv) + " violations; ";
  auto fns = pattern_extreme(1, 6);
  MipModel p = build_mip(58, 29, 6, 2, 64, CoverType::Standard);
  size_t pv = fns.empty() ? 1 : check_assignment(p, assignment_from_function(fns.front(), p)).size();
  ok = ok && pv == 0 && !fns.empty();
  detail += "six-slope q=58 eps=1/64: " + std::to_string(pv) + " violations";
  return {ok ? Status::Pass : Status::Fail, detail};
}

Outcome not_reproducible() {
  return {Status::NotReproducible,
          "wall-clock timings of the reference runs, the solver-dependent 2q and fulldim discoveries and the "
          "28-slope function need an external MIP solver or long runs; covered by emitting exact models, "
          "refind + is_extreme, and the property suites above"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"vertex counts", vertex_counts},
      {"redundancy removal counts", redundancy_counts},
      {"polytope dimensions", dimensions},
      {"extremality oracle equivalence", oracle_equivalence},
      {"arithmetic complexity", complexity_table},
      {"basis determinants and upper bound", determinant_bounds},
      {"pattern search", pattern_search},
      {"slope isomorphism and ordering", slope_properties},
      {"search soundness", search_soundness},
      {"combined search q=25", q25_search},
      {"MIP emitter", mip_checks},
      {"out of desk scale", not_reproducible},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    int n = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "NOT REPRODUCIBLE";
    if (o.status == Status::Fail) ++failed;
    std::printf("criterion %2d %-17s %s: %s\n", n, tag, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
