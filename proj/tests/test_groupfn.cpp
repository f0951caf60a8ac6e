#include <doctest.h>

#include <random>
#include <sstream>

#include "gj/errors.hpp"
#include "gj/groupfn.hpp"
#include "gj/patterns.hpp"

using namespace gj;

namespace {

Fraction F(long p, long q = 1) {
  Fraction r(p, q);
  r.canonicalize();
  return r;
}

GridFunction make(int q, int f, std::initializer_list<Fraction> vals) { return GridFunction(q, f, Vector(vals)); }

GridFunction zero_function(int q, int f) { return GridFunction(q, f, Vector(q, Fraction(0))); }

}  // namespace

TEST_CASE("fraction parsing and formatting") {
  CHECK(parse_fraction("3/6") == F(1, 2));
  CHECK(parse_fraction("-1.5e-3") == F(-3, 2000));
  CHECK(parse_fraction("0.25") == F(1, 4));
  CHECK(to_string(F(-6, 4)) == "-3/2");
  CHECK(to_string(F(4, 2)) == "2");
  bool reduced = true;
  parse_fraction("2/4", &reduced);
  CHECK_FALSE(reduced);
  CHECK_THROWS_AS(parse_fraction("1/0"), ParseError);
  CHECK_THROWS_AS(parse_fraction("abc"), ParseError);
  CHECK(simplest_between(F(333333, 1000000), F(333334, 1000000)) == F(1, 3));
  CHECK(simplest_between(F(1, 2), F(1, 2)) == F(1, 2));
}

TEST_CASE("gmic closed form") {
  GridFunction g = gmic(5, 3);
  CHECK(g == make(5, 3, {0, F(1, 3), F(2, 3), 1, F(1, 2)}));
}

TEST_CASE("subadditivity slack") {
  GridFunction g = gmic(5, 3);
  for (int y = 0; y < 5; ++y) CHECK(subadditivity_slack(g, 0, y) == 0);
  CHECK(subadditivity_slack(g, 1, 1) == 0);
  CHECK(subadditivity_slack(g, 4, 4) == 0);
  CHECK(subadditivity_slack(g, 1, 3) == F(1, 3) + 1 - F(1, 2));
  CHECK_THROWS_AS(subadditivity_slack(g, 5, 0), ArgumentError);
  CHECK_THROWS_AS(subadditivity_slack(g, -1, 0), ArgumentError);
}

TEST_CASE("minimality") {
  CHECK_FALSE(is_minimal(zero_function(5, 3)));
  CHECK(is_minimal(gmic(5, 3)));
  CHECK_FALSE(is_minimal(make(4, 1, {0, 1, F(1, 4), F(1, 2)})));
  for (int q = 2; q <= 12; ++q)
    for (int f = 1; f < q; ++f) CHECK(is_minimal(gmic(q, f)));
}

TEST_CASE("interpolate and restrict") {
  GridFunction g = gmic(5, 3);
  CHECK(restrict_to(interpolate(g), 1) == g);
  GridFunction r2 = restrict_to(interpolate(g), 2);
  CHECK(r2 == make(10, 6, {0, F(1, 6), F(1, 3), F(1, 2), F(2, 3), F(5, 6), 1, F(3, 4), F(1, 2), F(1, 4)}));
  PiecewiseLinear flat = interpolate(zero_function(4, 1));
  GridFunction z = restrict_to(flat, 3);
  CHECK(z.q() == 12);
  for (const auto& v : z.values()) CHECK(v == 0);
  CHECK_THROWS_AS(restrict_to(flat, 0), ArgumentError);
  PiecewiseLinear pl = interpolate(g);
  CHECK(pl(F(1, 5)) == F(1, 3));
  CHECK(pl(F(1, 10)) == F(1, 6));
  CHECK(pl(F(6, 5)) == F(1, 3));
}

TEST_CASE("slope counting") {
  CHECK(number_of_slopes(gmic(5, 3)) == 2);
  CHECK(number_of_slopes(zero_function(4, 1)) == 1);
  Vector s = distinct_slopes(gmic(5, 3));
  REQUIRE(s.size() == 2);
  CHECK(s[0] == F(5, 3));
  CHECK(s[1] == F(-5, 2));
}

TEST_CASE("arithmetic complexity") {
  CHECK(arithmetic_complexity(gmic(5, 3)) == 6);
  CHECK(arithmetic_complexity(zero_function(7, 2)) == 1);
}

TEST_CASE("automorphism") {
  GridFunction g = gmic(5, 3);
  CHECK(automorphism(g, 1) == g);
  GridFunction a2 = automorphism(g, 2);
  CHECK(a2.f_index() == 4);
  CHECK(is_minimal(a2));
  CHECK(automorphism(automorphism(g, 4), 4) == g);
  CHECK_THROWS_AS(automorphism(gmic(6, 1), 2), ArgumentError);
  for (int q = 3; q <= 11; ++q)
    for (int f = 1; f < q; ++f)
      for (int a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1) CHECK(is_minimal(automorphism(gmic(q, f), a)));
}

TEST_CASE("values and increments lie in the same lattice") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int q = 2 + static_cast<int>(rng() % 9);
    Vector v(q);
    for (int i = 1; i < q; ++i) v[i] = F(static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 12));
    GridFunction fn(q, 1, v);
    for (long d = 1; d <= 60; ++d) CHECK(values_in_lattice(fn, Integer(d)) == increments_in_lattice(fn, Integer(d)));
  }
}

TEST_CASE("slope count bounds") {
  for (int q = 2; q <= 12; ++q)
    for (int f = 1; f < q; ++f) {
      int k = number_of_slopes(gmic(q, f));
      CHECK(k >= 2);
      CHECK(k <= q);
    }
}

TEST_CASE("function file round trip") {
  GridFunction g = gmic(7, 3);
  CHECK(function_from_json(to_json(g)) == g);
  std::ostringstream warn;
  GridFunction h = function_from_json(R"({"q": 3, "f": "1/3", "values": ["0", "2/2", "2/4"]})", &warn);
  CHECK(h == make(3, 1, {0, 1, F(1, 2)}));
  CHECK(warn.str().find("lowest terms") != std::string::npos);
  CHECK_THROWS_AS(function_from_json(R"({"q": 3, "f": "1/3"})"), ParseError);
  CHECK_THROWS_AS(function_from_json(R"({"q": 3, "f": "1/4", "values": ["0","1","1/2"]})"), ParseError);
  CHECK_THROWS_AS(function_from_json("not json"), ParseError);
  CHECK_THROWS_AS(read_function_file("/nonexistent/dir/x.json"), IoError);
}

TEST_CASE("pattern function has six slopes") {
  auto fns = pattern_extreme(1, 6);
  REQUIRE_FALSE(fns.empty());
  for (const auto& fn : fns) {
    CHECK(fn.q() == 58);
    CHECK(number_of_slopes(fn) == 6);
  }
}
