#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

#include "gj/complex2d.hpp"
#include "gj/errors.hpp"
#include "gj/polytope.hpp"

using namespace gj;

namespace {

Fraction F(long p, long q = 1) {
  Fraction r(p, q);
  r.canonicalize();
  return r;
}

std::vector<GridFunction> vertices_of(int q, int f) {
  std::vector<GridFunction> out;
  for (const auto& v : enumerate_vertices(build_minimal_function_polytope(q, f)))
    out.push_back(function_from_vertex(q, f, v));
  return out;
}

size_t count(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

void paint_green(Painting& p, const Face& f) {
  for (auto [x, y] : corners(f, p.q())) p.set({FaceKind::Vertex, x, y}, Color::Green);
  p.set(f, Color::Green);
}

}  // namespace

TEST_CASE("corners") {
  using P = std::pair<int, int>;
  CHECK(corners({FaceKind::LowerTriangle, 1, 2}, 5) == std::vector<P>{{1, 2}, {2, 2}, {1, 3}});
  CHECK(corners({FaceKind::UpperTriangle, 1, 2}, 5) == std::vector<P>{{1, 3}, {2, 3}, {2, 2}});
  CHECK(corners({FaceKind::HEdge, 4, 4}, 5) == std::vector<P>{{4, 4}, {0, 4}});
  CHECK(corners({FaceKind::DEdge, 0, 0}, 5) == std::vector<P>{{0, 1}, {1, 0}});
}

TEST_CASE("projections") {
  Projections l = projections({FaceKind::LowerTriangle, 0, 0}, 4);
  CHECK(l.p1 == 0);
  CHECK(l.p2 == 0);
  CHECK(l.p3 == 0);
  CHECK(projections({FaceKind::UpperTriangle, 2, 2}, 4).p3 == 1);
  Projections d = projections({FaceKind::DEdge, 1, 3}, 5);
  CHECK(d.p1 == 1);
  CHECK(d.p2 == 3);
  CHECK(d.p3 == -1);
  Projections h = projections({FaceKind::HEdge, 2, 4}, 5);
  CHECK(h.p1 == 2);
  CHECK(h.p2 == -1);
  CHECK(h.p3 == 1);
  Projections v = projections({FaceKind::VEdge, 2, 4}, 5);
  CHECK(v.p1 == -1);
  CHECK(v.p2 == 4);
  CHECK(v.p3 == 1);
}

TEST_CASE("painting from a function") {
  GridFunction g = gmic(5, 3);
  Painting p = painting_from_function(g);
  for (int t = 0; t < 5; ++t) {
    CHECK(p.color({FaceKind::Vertex, 0, t}) == Color::Green);
    CHECK(p.color({FaceKind::Vertex, t, 0}) == Color::Green);
    CHECK(p.color({FaceKind::Vertex, t, mod(3 - t, 5)}) == Color::Green);
  }
  CHECK(p.color({FaceKind::LowerTriangle, 1, 1}) == Color::Green);
  for (const Face& f : p.all_faces()) CHECK(p.color(f) != Color::Grey);
  check_inclusion(p);

  // Not minimal: Delta pi(1,1) < 0; the zero test still decides colors.
  GridFunction bad(4, 1, {0, 1, 3, F(1, 2)});
  Painting pb = painting_from_function(bad);
  CHECK(pb.color({FaceKind::Vertex, 1, 1}) == Color::White);
  CHECK(pb.color({FaceKind::Vertex, 0, 2}) == Color::Green);
}

TEST_CASE("swap symmetry of paintings") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    int q = 3 + static_cast<int>(rng() % 6);
    Vector v(q);
    for (int i = 1; i < q; ++i) v[i] = F(static_cast<long>(rng() % 3), 2);
    Painting p = painting_from_function(GridFunction(q, 1, v));
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        CHECK(p.color({FaceKind::Vertex, x, y}) == p.color({FaceKind::Vertex, y, x}));
        CHECK(p.color({FaceKind::LowerTriangle, x, y}) == p.color({FaceKind::LowerTriangle, y, x}));
        CHECK(p.color({FaceKind::UpperTriangle, x, y}) == p.color({FaceKind::UpperTriangle, y, x}));
        CHECK(p.color({FaceKind::HEdge, x, y}) == p.color({FaceKind::VEdge, y, x}));
        CHECK(p.color({FaceKind::DEdge, x, y}) == p.color({FaceKind::DEdge, y, x}));
      }
  }
}

TEST_CASE("components of the q = 4 root painting") {
  Painting p = initial_painting(4, 1);
  ComponentPartition c = covered_components(p);
  CHECK(c.groups() == std::vector<std::vector<int>>{{0}, {1, 3}, {2}});
  CHECK(c.covered(0));
  CHECK(c.covered(1));
  CHECK_FALSE(c.covered(2));
  CHECK(c.uncovered() == std::vector<int>{2});
  paint_green(p, {FaceKind::LowerTriangle, 2, 2});
  apply_inclusion(p);
  ComponentPartition d = covered_components(p);
  CHECK(d.find(2) == d.find(0));
  CHECK(d.all_covered());
}

TEST_CASE("empty painting has singleton uncovered components") {
  Painting p(6, 1);
  for (const Face& f : p.all_faces()) p.set(f, f.kind == FaceKind::Vertex ? Color::Green : Color::White);
  ComponentPartition c = covered_components(p);
  CHECK(c.count() == 6);
  CHECK(c.uncovered().size() == 6);
}

TEST_CASE("inclusion violations are rejected") {
  Painting p(5, 1);
  p.set({FaceKind::LowerTriangle, 1, 1}, Color::Green);
  CHECK_THROWS_AS(check_inclusion(p), InvariantError);
  CHECK_THROWS_AS(covered_components(p), InvariantError);
}

TEST_CASE("component fixed point does not depend on face order") {
  std::mt19937 rng(11);
  for (int q : {7, 9, 10}) {
    for (const GridFunction& fn : vertices_of(q, 2)) {
      Painting p = painting_from_function(fn);
      ComponentPartition ref = covered_components(p);
      std::vector<Face> green;
      for (const Face& f : p.all_faces())
        if (f.kind != FaceKind::Vertex && p.color(f) == Color::Green) green.push_back(f);
      for (int rep = 0; rep < 3; ++rep) {
        std::shuffle(green.begin(), green.end(), rng);
        ComponentPartition c(q);
        int before_count = c.count();
        int before_cov = 0;
        for (const Face& f : green) {
          c.add_face(f);
          CHECK(c.count() <= before_count);
          int cov = q - static_cast<int>(c.uncovered().size());
          CHECK(cov >= before_cov);
          before_count = c.count();
          before_cov = cov;
        }
        CHECK(c.same_partition(ref));
        CHECK(c.uncovered() == ref.uncovered());
      }
    }
  }
}

TEST_CASE("gmic is extreme") {
  ExtremeCertificate c = is_extreme(gmic(5, 3));
  CHECK(c.minimal);
  CHECK(c.vertex);
  CHECK(c.covered);
  CHECK(c.extreme());
  CHECK(oversampling_vertex_test(gmic(5, 3), 3));
}

TEST_CASE("midpoint of two vertices is not extreme") {
  auto vs = vertices_of(11, 1);
  REQUIRE(vs.size() >= 2);
  Vector mid(11);
  for (int i = 0; i < 11; ++i) mid[i] = (vs[0][i] + vs[1][i]) / 2;
  ExtremeCertificate c = is_extreme(GridFunction(11, 1, mid));
  CHECK(c.minimal);
  CHECK_FALSE(c.vertex);
  CHECK_FALSE(c.extreme());
}

TEST_CASE("uncovered vertices fail both tests") {
  int uncovered_vertices = 0;
  for (int f = 1; f < 10; ++f)
    for (const GridFunction& fn : vertices_of(10, f)) {
      ExtremeCertificate c = is_extreme(fn);
      CHECK(c.vertex);
      if (!c.covered) {
        ++uncovered_vertices;
        CHECK_FALSE(c.uncovered.empty());
        CHECK_FALSE(c.extreme());
        CHECK_FALSE(oversampling_vertex_test(fn, 3));
      }
    }
  CHECK(uncovered_vertices > 0);
}

TEST_CASE("extremality agrees with the oversampling oracle") {
  for (int q = 3; q <= 9; ++q)
    for (int f = 1; f < q; ++f)
      for (const GridFunction& fn : vertices_of(q, f)) {
        bool e = is_extreme(fn).extreme();
        CHECK(e == oversampling_vertex_test(fn, 3));
        CHECK(e == oversampling_vertex_test(fn, 4));
      }
}

TEST_CASE("slopes never exceed components") {
  for (int q = 5; q <= 10; ++q)
    for (int f = 1; f < q; ++f)
      for (const GridFunction& fn : vertices_of(q, f))
        CHECK(number_of_slopes(fn) <= covered_components(painting_from_function(fn)).count());
}

TEST_CASE("painting dump round trip") {
  Painting p = painting_from_function(gmic(7, 2));
  std::string text = dump_painting(p);
  CHECK(parse_painting(text, 7, 2) == p);
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  CHECK(std::is_sorted(lines.begin(), lines.end()));
}

TEST_CASE("svg rendering") {
  std::string svg = render_2d_diagram(gmic(5, 3));
  CHECK(count(svg, "<g class=\"cell\"") == 25);
  CHECK(render_2d_diagram(gmic(5, 3)) == svg);
  Painting p(4, 1);
  paint_green(p, {FaceKind::LowerTriangle, 2, 2});
  std::string one = render_2d_diagram(p);
  CHECK(count(one, "fill=\"#006400\"/>") == 1);
  CHECK(count(one, "class=\"lower\"") == 16);
  auto path = std::filesystem::temp_directory_path() / "gj_test_gmic.svg";
  write_svg(svg, path.string());
  CHECK(std::filesystem::file_size(path) == svg.size());
  CHECK_THROWS_AS(write_svg(svg, "/nonexistent/dir/out.svg"), IoError);
}
