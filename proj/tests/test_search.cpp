#include <doctest.h>

#include <algorithm>

#include "gj/errors.hpp"
#include "gj/search.hpp"

using namespace gj;

namespace {

SearchConfig config(int q, int f, int k, SearchMode mode) {
  SearchConfig c;
  c.q = q;
  c.f_index = f;
  c.target_slopes = k;
  c.mode = mode;
  return c;
}

std::vector<GridFunction> functions(const std::vector<FoundFunction>& found) {
  std::vector<GridFunction> out;
  for (const auto& r : found) out.push_back(r.fn);
  std::sort(out.begin(), out.end());
  return out;
}

// Depth-first walk over the propagated tree, calling fn on every node.
template <class Fn>
void walk(SearchNode node, int max_nodes, int& seen, Fn&& fn) {
  if (seen >= max_nodes) return;
  if (!node.propagate()) return;
  ++seen;
  fn(node);
  auto t = node.choose_branching_triangle();
  if (!t) return;
  auto [green, white] = node.branch(*t);
  walk(std::move(green), max_nodes, seen, fn);
  walk(std::move(white), max_nodes, seen, fn);
}

}  // namespace

TEST_CASE("configuration") {
  CHECK(exact_epsilon(9) == Fraction(1, 1000));
  CHECK(exact_epsilon(8) == Fraction(1, 100));
  SearchConfig c = config(5, 1, 2, SearchMode::Combined);
  CHECK(c.exp_dim_threshold == 11);
  CHECK(c.epsilon == Fraction(1, 4));
  validate(c);
  c.epsilon = 0;
  CHECK_THROWS_AS(validate(c), ArgumentError);
  c = config(5, 0, 2, SearchMode::Combined);
  CHECK_THROWS_AS(validate(c), ArgumentError);
}

TEST_CASE("root of the q = 4 tree") {
  SearchNode root(4, 1, Fraction(1, 4));
  REQUIRE(root.propagate());
  CHECK(root.components().uncovered() == std::vector<int>{2});
  auto t = root.choose_branching_triangle();
  REQUIRE(t);
  CHECK(*t == Face{FaceKind::LowerTriangle, 2, 2});
  Projections p = projections(*t, 4);
  CHECK(p.p1 == 2);
  CHECK(p.p2 == 2);

  auto [green, white] = root.branch(*t);
  CHECK(green.green_child());
  CHECK_FALSE(white.green_child());
  CHECK(green.cs_matrix().rank() <= root.cs_matrix().rank() + 3);
  for (const Face& f : root.painting().all_faces())
    if (root.painting().color(f) != Color::Grey) {
      CHECK(green.painting().color(f) == root.painting().color(f));
      CHECK(white.painting().color(f) == root.painting().color(f));
    }
  REQUIRE(green.propagate());
  CHECK(green.components().all_covered());
  CHECK_FALSE(green.choose_branching_triangle());
  CHECK(white.painting().color(*t) == Color::White);
}

TEST_CASE("heuristic search on q = 4") {
  auto paintings = heuristic_backtracking_search(config(4, 1, 2, SearchMode::Heuristic));
  REQUIRE_FALSE(paintings.empty());
  for (const Painting& p : paintings) CHECK(covered_components(p).all_covered());
  CHECK(heuristic_backtracking_search(config(4, 1, 5, SearchMode::Heuristic)).empty());
  CHECK(heuristic_backtracking_search(config(7, 2, 8, SearchMode::Heuristic)).empty());
}

TEST_CASE("vertex filtering") {
  auto r5 = vertex_filtering_search(config(5, 1, 1, SearchMode::VertexFilter));
  CHECK_FALSE(r5.empty());
  CHECK(r5.size() <= 2);
  for (const auto& r : vertex_filtering_search(config(4, 2, 1, SearchMode::VertexFilter))) CHECK(is_minimal(r.fn));
}

TEST_CASE("all modes are sound") {
  for (int q = 4; q <= 9; ++q)
    for (int f = 1; f < q; ++f)
      for (SearchMode mode : {SearchMode::VertexFilter, SearchMode::Heuristic, SearchMode::Combined}) {
        SearchConfig c = config(q, f, 2, mode);
        c.exp_dim_threshold = 3;
        for (const auto& r : run_search(c)) {
          CAPTURE(q);
          CAPTURE(f);
          CHECK(is_extreme(r.fn).extreme());
          CHECK(oversampling_vertex_test(r.fn, 3));
          CHECK(r.slopes >= 2);
          CHECK(r.slopes == number_of_slopes(r.fn));
        }
      }
}

TEST_CASE("threshold q reduces combined mode to vertex filtering") {
  for (int f : {1, 2, 3}) {
    SearchConfig c = config(7, f, 2, SearchMode::Combined);
    c.exp_dim_threshold = 7;
    SearchConfig v = config(7, f, 2, SearchMode::VertexFilter);
    CHECK(functions(combined_search(c)) == functions(vertex_filtering_search(v)));
  }
}

TEST_CASE("results do not depend on the worker count") {
  SearchConfig c = config(13, 4, 3, SearchMode::Combined);
  c.exp_dim_threshold = 5;
  auto one = functions(combined_search(c));
  c.worker_count = 4;
  c.split_depth = 2;
  CHECK(functions(combined_search(c)) == one);
  SearchConfig h = config(11, 3, 3, SearchMode::Heuristic);
  auto hp = heuristic_backtracking_search(h);
  h.worker_count = 3;
  CHECK(heuristic_backtracking_search(h) == hp);
}

TEST_CASE("node invariants along the tree") {
  for (auto [q, f] : {std::pair{9, 2}, std::pair{10, 3}, std::pair{11, 1}}) {
    int seen = 0;
    walk(SearchNode(q, f, Fraction(1, 4)), 60, seen, [&](SearchNode& node) {
      CHECK(node.components().same_partition(covered_components(node.painting())));
      check_inclusion(node.painting());
      CHECK(node.exp_dim() >= affine_dimension(restricted_polytope(node.painting())));
    });
    CHECK(seen > 1);
  }
}

TEST_CASE("re-solve results do not depend on the starting basis") {
  SearchNode root(9, 2, Fraction(1, 4));
  REQUIRE(root.propagate());
  auto t = root.choose_branching_triangle();
  REQUIRE(t);
  auto [green, white] = root.branch(*t);
  for (SearchNode* node : {&green, &white}) {
    if (!node->propagate()) continue;
    std::vector<int> deltas;
    for (int x = 1; x < 9; ++x)
      for (int y = x; y < 9; ++y)
        if (node->delta_var(x, y) >= 0) deltas.push_back(node->delta_var(x, y));
    // Forward order on one copy, reverse order on another.
    LpState forward = node->lp();
    LpState backward = node->lp();
    std::vector<LpResult> a, b;
    for (int d : deltas) a.push_back(forward.solve({{d, 1}}, Sense::Maximize));
    for (auto it = deltas.rbegin(); it != deltas.rend(); ++it) b.push_back(backward.solve({{*it, 1}}, Sense::Maximize));
    std::reverse(b.begin(), b.end());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].status == b[i].status);
      if (a[i].status == LpStatus::Optimal) CHECK(a[i].value == b[i].value);
    }
  }
}
