#include "gj/patterns.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gj/errors.hpp"

namespace gj {

namespace {

using Form = std::vector<long>;
using Pt = std::pair<long, long>;

void check_r(int r) {
  if (r < 1) throw ArgumentError("r must be at least 1");
}

// Closed convex polygon membership (boundary included).
bool inside(Pt p, const std::vector<Pt>& poly) {
  int sign = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    auto [ax, ay] = poly[i];
    auto [bx, by] = poly[(i + 1) % poly.size()];
    long cr = (bx - ax) * (p.second - ay) - (by - ay) * (p.first - ax);
    if (cr == 0) continue;
    int s = cr > 0 ? 1 : -1;
    if (sign == 0)
      sign = s;
    else if (s != sign)
      return false;
  }
  return true;
}

std::vector<Pt> triangle_points(const Face& t) {
  if (t.kind == FaceKind::LowerTriangle) return {{t.x, t.y}, {t.x + 1, t.y}, {t.x, t.y + 1}};
  return {{t.x, t.y + 1}, {t.x + 1, t.y + 1}, {t.x + 1, t.y}};
}

// Triangles inside the region whose three projections lie in the given
// interval sets and that are additive under every choice of slopes.
std::vector<Face> pattern_triangles(const std::vector<Pt>& region, const std::set<int>& p12,
                                    const std::set<int>& p3, const std::vector<Form>& forms) {
  const int q = static_cast<int>(forms.size());
  auto additive = [&](long x, long y) {
    const Form& a = forms[mod(x, q)];
    const Form& b = forms[mod(y, q)];
    const Form& c = forms[mod(x + y, q)];
    for (size_t j = 0; j < a.size(); ++j)
      if (a[j] + b[j] != c[j]) return false;
    return true;
  };
  long lo_x = region[0].first, hi_x = lo_x, lo_y = region[0].second, hi_y = lo_y;
  for (auto [x, y] : region) {
    lo_x = std::min(lo_x, x), hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y), hi_y = std::max(hi_y, y);
  }
  std::vector<Face> out;
  for (long x = lo_x; x < hi_x; ++x)
    for (long y = lo_y; y < hi_y; ++y)
      for (FaceKind k : {FaceKind::LowerTriangle, FaceKind::UpperTriangle}) {
        Face t{k, static_cast<int>(x), static_cast<int>(y)};
        auto pts = triangle_points(t);
        if (!std::all_of(pts.begin(), pts.end(), [&](Pt p) { return inside(p, region); })) continue;
        if (!std::all_of(pts.begin(), pts.end(), [&](Pt p) { return additive(p.first, p.second); }))
          continue;
        Projections pr = projections(t, q);
        if (p12.count(pr.p1) && p12.count(pr.p2) && p3.count(pr.p3)) out.push_back(t);
      }
  return out;
}

std::vector<Pt> transpose(std::vector<Pt> v) {
  for (auto& [x, y] : v) std::swap(x, y);
  return v;
}

void paint_green(Painting& p, const Face& f) {
  for (auto [a, b] : corners(f, p.q())) p.set({FaceKind::Vertex, a, b}, Color::Green);
  p.set(f, Color::Green);
}

Face mirror(const Face& t, int q) {
  FaceKind k = t.kind == FaceKind::LowerTriangle ? FaceKind::UpperTriangle : FaceKind::LowerTriangle;
  return {k, q - 1 - t.x, q - 1 - t.y};
}

Form zero_form(int r) { return Form(r + 2, 0); }

}  // namespace

int pattern_q(int r) { return 36 * r + 22; }

Painting build_prescribed_painting(int r) {
  check_r(r);
  const int q = pattern_q(r);
  const int a = 9 * r + 5;  // (q-2)/4
  const auto forms = pattern_linear_forms(r);
  std::vector<Face> tris;
  auto lower = [&](int x, int y) { tris.push_back({FaceKind::LowerTriangle, x, y}); };
  auto upper_at_corner = [&](int x, int y) { tris.push_back({FaceKind::UpperTriangle, x - 1, y - 1}); };

  // Step 0.
  for (auto [x, y] : std::vector<Pt>{{0, 0}, {0, a}, {0, 2 * a}, {a, a}, {a, 0}, {2 * a, 0}})
    lower(static_cast<int>(x), static_cast<int>(y));

  // Step 1.
  for (auto [x, y] : std::vector<Pt>{{2, a}, {a, a}, {a, 2}}) upper_at_corner(x, y);
  for (auto [x, y] : std::vector<Pt>{{2, 9 * r + 4},
                                     {4, 9 * r + 4},
                                     {4, 9 * r + 2},
                                     {6, 9 * r + 2},
                                     {9 * r + 2, 9 * r + 4},
                                     {9 * r + 4, 9 * r + 4},
                                     {9 * r + 2, 9 * r + 2},
                                     {9 * r + 4, 9 * r + 2},
                                     {9 * r + 4, 4},
                                     {9 * r + 2, 4},
                                     {9 * r + 2, 6}})
    lower(static_cast<int>(x), static_cast<int>(y));

  // Steps 2..r: parallelogram, square and mirrored parallelogram.
  for (int t = 2; t <= r; ++t) {
    const long b = 9 * r - 3 * t;
    std::vector<Pt> par{{6 * t - 9, b + 10}, {6 * t - 4, b + 10}, {6 * t + 1, b + 5}, {6 * t - 4, b + 5}};
    std::vector<Pt> sq{{b + 5, b + 10}, {b + 10, b + 10}, {b + 10, b + 5}, {b + 5, b + 5}};
    std::set<int> p12{6 * t - 9, 6 * t - 7, 6 * t - 5, 6 * t - 4, 6 * t - 2, 6 * t,
                      static_cast<int>(b + 5), static_cast<int>(b + 7), static_cast<int>(b + 9)};
    std::set<int> p3{9 * r + 3 * t + 1,   9 * r + 3 * t + 3,   9 * r + 3 * t + 5,
                     18 * r - 6 * t + 10, 18 * r - 6 * t + 12, 18 * r - 6 * t + 14,
                     18 * r - 6 * t + 15, 18 * r - 6 * t + 17, 18 * r - 6 * t + 19};
    for (const auto& region : {par, sq, transpose(par)})
      for (const Face& f : pattern_triangles(region, p12, p3, forms)) tris.push_back(f);
  }

  // Step r+1.
  {
    std::vector<Pt> tri{{6 * r - 3, 6 * r + 7}, {6 * r + 7, 6 * r + 7}, {6 * r + 7, 6 * r - 3}};
    std::set<int> p12{6 * r - 3, 6 * r - 1, 6 * r + 1, 6 * r + 2, 6 * r + 3, 6 * r + 4, 6 * r + 6};
    std::set<int> p3{12 * r + 4, 12 * r + 6, 12 * r + 7, 12 * r + 8, 12 * r + 9, 12 * r + 11, 12 * r + 13};
    for (const Face& f : pattern_triangles(tri, p12, p3, forms)) tris.push_back(f);
  }

  Painting p(q, q / 2);
  for (const Face& f : tris) {
    paint_green(p, f);
    paint_green(p, mirror(f, q));
  }
  // Symmetry diagonals x + y = 1/2 and x + y = 3/2.
  const int h = q / 2;
  for (int x = 0; x < h; ++x) {
    paint_green(p, {FaceKind::DEdge, x, h - x - 1});
    paint_green(p, {FaceKind::DEdge, h + x, q - x - 1});
  }
  apply_inclusion(p);
  return p;
}

std::vector<std::vector<long>> pattern_linear_forms(int r) {
  check_r(r);
  const int q = pattern_q(r);
  const int n = r + 2;
  auto e = [&](int j) {
    Form v = zero_form(r);
    v[j] = 1;
    return v;
  };
  auto prefix = [&](int i) {  // sum_{j=1..i} s_j
    Form v = zero_form(r);
    for (int j = 1; j <= i; ++j) v[j] = 1;
    return v;
  };
  auto comb = [&](std::initializer_list<std::pair<long, Form>> terms) {
    Form v = zero_form(r);
    for (const auto& [k, f] : terms)
      for (int j = 0; j < n; ++j) v[j] += k * f[j];
    return v;
  };
  const Form base = comb({{1, e(0)}, {-2, e(1)}});
  const Form total = prefix(r);
  std::vector<Form> c(q);
  std::vector<char> set(q, 0);
  auto put = [&](int i, Form v) {
    c[i] = std::move(v);
    set[i] = 1;
  };
  for (int i = 0; i <= r; ++i) {
    Form s6 = comb({{6, prefix(i)}, {1, base}});
    put(6 * i, comb({{1, s6}, {-1, e(i)}, {2, e(i + 1)}}));
    put(6 * i + 1, comb({{1, s6}, {2, e(i + 1)}}));
    put(6 * i + 2, comb({{1, s6}, {3, e(i + 1)}}));
    put(6 * i + 3, comb({{1, s6}, {4, e(i + 1)}}));
    if (i <= r - 1) {
      put(6 * i + 4, comb({{1, s6}, {4, e(i + 1)}, {1, e(i + 2)}}));
      put(6 * i + 5, comb({{1, s6}, {5, e(i + 1)}, {1, e(i + 2)}}));
    }
  }
  for (int i = 0; i <= r; ++i) {
    Form s9 = comb({{9, total}, {-3, prefix(i)}, {1, base}, {7, e(r + 1)}});
    put(9 * r + 5 - 3 * i, comb({{1, s9}, {-1, e(i + 1)}}));
    put(9 * r + 4 - 3 * i, comb({{1, s9}, {-2, e(i + 1)}}));
    if (i <= r - 1) put(9 * r + 3 - 3 * i, comb({{1, s9}, {-2, e(i + 1)}, {-1, e(i + 2)}}));
  }
  const Form norm = pattern_normalization(r);
  for (int t = 0; t <= 9 * r + 5; ++t) put(9 * r + 6 + t, comb({{1, norm}, {-1, c[9 * r + 5 - t]}}));
  for (int t = q / 2 + 1; t < q; ++t) put(t, c[q - t]);
  if (std::find(set.begin(), set.end(), 0) != set.end())
    throw InvariantError("pattern linear forms do not cover every index");
  return c;
}

std::vector<long> pattern_normalization(int r) {
  check_r(r);
  Form v = zero_form(r);
  v[0] = 3;
  v[1] = -6;
  for (int j = 1; j <= r; ++j) v[j] += 18;
  v[r + 1] += 14;
  return v;
}

GridFunction pi_from_slopes(int r, const Vector& s) {
  check_r(r);
  if (static_cast<int>(s.size()) != r + 2) throw ArgumentError("expected r+2 slope values");
  const int q = pattern_q(r);
  auto forms = pattern_linear_forms(r);
  Vector values(q);
  for (int i = 0; i < q; ++i) {
    Fraction v = 0;
    for (int j = 0; j < r + 2; ++j)
      if (forms[i][j] != 0) v += forms[i][j] * s[j];
    values[i] = v;
  }
  return GridFunction(q, q / 2, std::move(values));
}

Vector slopes_from_pi(int r, const GridFunction& fn) {
  check_r(r);
  const int q = pattern_q(r);
  if (fn.q() != q) throw ArgumentError("function has q = " + std::to_string(fn.q()) + ", expected " +
                                       std::to_string(q));
  for (int i = 1; i < q; ++i)
    if (fn[i] != fn[q - i]) throw ArgumentError("function is not invariant under i -> q-i");
  Vector s(r + 2);
  s[0] = fn[1] - fn[0];
  s[1] = fn[2] - fn[1];
  for (int t = 2; t <= r + 1; ++t) s[t] = fn[6 * t - 8] - fn[6 * t - 9];
  return s;
}

std::vector<std::pair<int, int>> pattern_extra_additivities(int r) {
  return {{6 * r + 5, 36 * r + 18}, {6 * r + 7, 36 * r + 10}, {6 * r + 7, 36 * r + 12},
          {6 * r + 10, 36 * r + 3}, {6 * r + 11, 36 * r},     {9 * r - 18, 9 * r - 18},
          {9 * r - 12, 9 * r - 12}, {9 * r - 9, 9 * r - 9},   {9 * r - 3, 9 * r - 3},
          {9 * r + 3, 9 * r + 3}};
}

Polytope build_slope_polytope(int r, bool extra) {
  check_r(r);
  const int q = pattern_q(r);
  const int n = r + 2;
  auto forms = pattern_linear_forms(r);
  auto delta = [&](int x, int y) {
    Form v(n);
    const Form& a = forms[mod(x, q)];
    const Form& b = forms[mod(y, q)];
    const Form& c = forms[mod(x + y, q)];
    for (int j = 0; j < n; ++j) v[j] = a[j] + b[j] - c[j];
    return v;
  };
  auto primitive = [](Form v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, x);
    if (g > 1)
      for (long& x : v) x /= g;
    return v;
  };
  auto to_vector = [](const Form& v) {
    Vector out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
  };

  std::set<Form> rows;
  for (int x = 0; x < q; ++x)
    for (int y = x; y < q; ++y) {
      Form v = delta(x, y);
      if (std::all_of(v.begin(), v.end(), [](long a) { return a == 0; })) continue;
      rows.insert(primitive(std::move(v)));
    }

  Polytope p;
  p.dimension_ambient = n;
  p.equalities.push_back({to_vector(pattern_normalization(r)), Fraction(1), Relation::EQ});
  std::set<Form> eqs;
  if (extra)
    for (auto [x, y] : pattern_extra_additivities(r)) {
      Form v = delta(x, y);
      if (std::all_of(v.begin(), v.end(), [](long a) { return a == 0; })) continue;
      v = primitive(std::move(v));
      Form neg = v;
      for (long& a : neg) a = -a;
      if (!eqs.count(neg)) eqs.insert(v);
    }
  for (const Form& v : eqs) p.equalities.push_back({to_vector(v), Fraction(0), Relation::EQ});
  for (const Form& v : rows) p.inequalities.push_back({to_vector(v), Fraction(0), Relation::GEQ});
  return p;
}

std::vector<GridFunction> pattern_extreme(int r, int k_slopes) {
  check_r(r);
  std::vector<GridFunction> out;
  if (k_slopes > 2 * (r + 2)) return out;
  Polytope p = build_slope_polytope(r, r >= 16);
  for (const Vector& s : enumerate_vertices(p)) {
    GridFunction fn = pi_from_slopes(r, s);
    if (number_of_slopes(fn) < k_slopes) continue;
    if (!is_extreme(fn).extreme()) continue;
    out.push_back(std::move(fn));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gj
