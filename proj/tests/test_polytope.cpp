#include <doctest.h>

#include <map>
#include <sstream>

#include "gj/errors.hpp"
#include "gj/linalg.hpp"
#include "gj/lp.hpp"
#include "gj/polytope.hpp"

using namespace gj;

namespace {

Fraction F(long p, long q = 1) {
  Fraction r(p, q);
  r.canonicalize();
  return r;
}

Polytope unit_square() {
  Polytope p;
  p.dimension_ambient = 2;
  p.inequalities = {{{1, 0}, 0, Relation::GEQ}, {{0, 1}, 0, Relation::GEQ},
                    {{-1, 0}, -1, Relation::GEQ}, {{0, -1}, -1, Relation::GEQ}};
  return p;
}

Fraction dot(const Vector& a, const Vector& b) {
  Fraction s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("minimal function polytope sizes") {
  Polytope p5 = build_minimal_function_polytope(5, 1);
  CHECK(p5.raw_inequality_count() == 21);
  CHECK(affine_dimension(p5) == 1);
  Polytope p11 = build_minimal_function_polytope(11, 1);
  CHECK(p11.raw_inequality_count() == 78);
  CHECK(affine_dimension(p11) == 4);
  CHECK(enumerate_vertices(p11).size() == 18);
  CHECK_THROWS_AS(build_minimal_function_polytope(5, 0), ArgumentError);
  CHECK_THROWS_AS(build_minimal_function_polytope(5, 5), ArgumentError);
}

TEST_CASE("q = 3 has a unique minimal function") {
  auto vs = enumerate_vertices(build_minimal_function_polytope(3, 1));
  REQUIRE(vs.size() == 1);
  GridFunction fn = function_from_vertex(3, 1, vs[0]);
  CHECK(fn.values() == Vector{0, 1, F(1, 2)});
}

TEST_CASE("triple system has the same vertices") {
  CHECK(enumerate_vertices(build_triple_system_polytope(5, 1)).size() == 2);
  CHECK(enumerate_vertices(build_triple_system_polytope(7, 1)).size() == 4);
  for (int q = 3; q <= 11; ++q)
    for (int f = 1; f < q; ++f) {
      CAPTURE(q);
      CAPTURE(f);
      CHECK(enumerate_vertices(build_triple_system_polytope(q, f)) ==
            enumerate_vertices(build_minimal_function_polytope(q, f)));
    }
}

TEST_CASE("redundancy removal") {
  // Facets plus independent equalities over pi_1..pi_{q-1}; two fewer
  // than the third-party count for every tabulated q.
  Polytope p5 = build_minimal_function_polytope(5, 1);
  Polytope r5 = remove_redundant(p5);
  CHECK(r5.constraint_count() == 7 - 2);
  CHECK(enumerate_vertices(r5) == enumerate_vertices(p5));
  Polytope r11 = remove_redundant(build_minimal_function_polytope(11, 1));
  CHECK(r11.constraint_count() == 20 - 2);
  CHECK(static_cast<int>(r11.inequalities.size()) == 20 - (11 + 5) / 2);
  Polytope again = remove_redundant(r11);
  CHECK(again.constraint_count() == r11.constraint_count());
  for (int q = 5; q <= 9; ++q)
    for (int f = 1; f < q; ++f) {
      Polytope p = build_minimal_function_polytope(q, f);
      CHECK(enumerate_vertices(remove_redundant(p)) == enumerate_vertices(p));
    }
  Polytope empty;
  empty.dimension_ambient = 1;
  empty.inequalities = {{{1}, 1, Relation::GEQ}, {{-1}, 0, Relation::GEQ}};
  CHECK_THROWS_AS(remove_redundant(empty), InfeasibleError);
}

TEST_CASE("vertex enumeration") {
  CHECK(enumerate_vertices(build_minimal_function_polytope(13, 1)).size() == 40);
  auto sq = enumerate_vertices(unit_square());
  CHECK(sq == std::vector<Vector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  Polytope ray;
  ray.dimension_ambient = 1;
  ray.inequalities = {{{1}, 0, Relation::GEQ}};
  CHECK_THROWS_AS(enumerate_vertices(ray), UnboundedError);
  Polytope empty;
  empty.dimension_ambient = 1;
  empty.inequalities = {{{1}, 1, Relation::GEQ}, {{-1}, 0, Relation::GEQ}};
  CHECK(enumerate_vertices(empty).empty());
}

TEST_CASE("every vertex is tight at n independent constraints") {
  for (int q : {7, 9, 10}) {
    Polytope p = build_minimal_function_polytope(q, 2);
    for (const Vector& v : enumerate_vertices(p)) {
      CHECK(p.contains(v));
      Matrix tight;
      for (const auto& c : p.equalities) {
        CHECK(dot(c.coefficients, v) == c.rhs);
        tight.push_back(c.coefficients);
      }
      for (const auto& c : p.inequalities)
        if (dot(c.coefficients, v) == c.rhs) tight.push_back(c.coefficients);
      CHECK(rank(tight) == p.dimension_ambient);
    }
  }
}

TEST_CASE("exact LP") {
  // q = 4, f = 2: variables pi_1, pi_2, pi_3 with pi_0 = 0.
  LpState lp;
  for (int i = 0; i < 3; ++i) lp.add_variable(F(0), F(1));
  auto pi = [](int i) { return (i % 4) - 1; };
  for (int x = 1; x < 4; ++x)
    for (int y = x; y < 4; ++y) {
      std::map<int, Fraction> row;
      row[pi(x)] += 1;
      row[pi(y)] += 1;
      if ((x + y) % 4 != 0) row[pi(x + y)] -= 1;
      LinearExpr e(row.begin(), row.end());
      lp.add_row(e, F(0), std::nullopt);
    }
  lp.add_row({{pi(1), 2}}, F(1), F(1));
  lp.add_row({{pi(2), 1}}, F(1), F(1));
  lp.add_row({{pi(3), 2}}, F(1), F(1));
  REQUIRE(lp.feasible());
  LpResult r = lp.solve({{pi(1), 2}, {pi(2), -1}}, Sense::Maximize);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 0);

  LpState lp5;
  Polytope p5 = build_minimal_function_polytope(5, 1);
  for (int i = 0; i < 4; ++i) lp5.add_variable(std::nullopt, std::nullopt);
  auto expr = [](const Vector& c) {
    LinearExpr e;
    for (int i = 0; i < static_cast<int>(c.size()); ++i)
      if (c[i] != 0) e.emplace_back(i, c[i]);
    return e;
  };
  for (const auto& c : p5.equalities) lp5.add_row(expr(c.coefficients), c.rhs, c.rhs);
  std::vector<int> rows;
  for (const auto& c : p5.inequalities) rows.push_back(lp5.add_row(expr(c.coefficients), c.rhs, std::nullopt));
  CHECK(lp5.feasible());
  LinearExpr obj = {{0, 1}, {1, 1}};
  LpResult before = lp5.solve(obj, Sense::Maximize);
  REQUIRE(before.status == LpStatus::Optimal);
  lp5.set_upper(0, before.point[0] / 2);
  LpResult after = lp5.solve(obj, Sense::Maximize);
  if (after.status == LpStatus::Optimal) CHECK(after.value <= before.value);
  // A Delta pi row forced both >= 1/4 and <= 0.
  lp5.set_lower(rows[3], F(1, 4));
  lp5.set_upper(rows[3], F(0));
  CHECK_FALSE(lp5.feasible());
}

TEST_CASE("LP outcomes") {
  LpState lp;
  int x = lp.add_variable(F(0), std::nullopt);
  CHECK(lp.solve({{x, 1}}, Sense::Maximize).status == LpStatus::Unbounded);
  LpResult m = lp.solve({{x, 1}}, Sense::Minimize);
  CHECK(m.status == LpStatus::Optimal);
  CHECK(m.value == 0);
  lp.add_row({{x, 1}}, std::nullopt, F(-1));
  CHECK(lp.solve({}, Sense::Maximize).status == LpStatus::Infeasible);
}

TEST_CASE("rank") {
  CHECK(rank(Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 3);
  CHECK(rank(Matrix{{0, 0}, {0, 0}}) == 0);
  // pi_0 row and symmetry rows for q = 5, f = 1 over pi_0..pi_4.
  Matrix eq = {{1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {0, 0, 1, 0, 1}, {0, 0, 0, 2, 0}};
  int r = rank(eq);
  CHECK(r == 4);
  CHECK(5 - r == 1);
  CHECK(determinant(IntMatrix{{2, 1}, {1, 1}}) == 1);
}

TEST_CASE("lrs-style text round trip") {
  Polytope p = build_minimal_function_polytope(7, 2);
  std::stringstream h;
  write_h_representation(p, h);
  Polytope back = read_h_representation(h);
  CHECK(enumerate_vertices(back) == enumerate_vertices(p));
  auto vs = enumerate_vertices(p);
  std::stringstream v;
  write_v_representation(vs, p.dimension_ambient, v);
  CHECK(read_v_representation(v) == vs);
}
