#include "gj/polytope.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "gj/errors.hpp"
#include "gj/linalg.hpp"
#include "gj/lp.hpp"

namespace gj {

bool Polytope::contains(const Vector& x) const {
  auto dot = [&](const Vector& a) {
    Fraction s = 0;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) s += a[i] * x[i];
    return s;
  };
  for (auto& e : equalities)
    if (dot(e.coefficients) != e.rhs) return false;
  for (auto& c : inequalities)
    if (dot(c.coefficients) < c.rhs) return false;
  return true;
}

namespace {

void check_qf(int q, int f_index) {
  if (q < 2) throw ArgumentError("q must be at least 2");
  if (f_index < 1 || f_index >= q) throw ArgumentError("f_index must lie in [1, q-1]");
}

// Coefficient vector over pi_1..pi_{q-1} for sum of (index, coef).
Vector grid_row(int q, std::initializer_list<std::pair<long, int>> terms) {
  Vector v(q - 1);
  for (auto [i, c] : terms) {
    int k = mod(i, q);
    if (k != 0) v[k - 1] += c;
  }
  return v;
}

void add_symmetry(Polytope& p, int q, int f_index) {
  for (int x = 0; x < q; ++x) {
    int y = mod(f_index - x, q);
    if (y < x) continue;
    Vector a = grid_row(q, {{x, 1}, {y, 1}});
    p.equalities.push_back({a, 1, Relation::EQ});
  }
}

}  // namespace

Polytope build_minimal_function_polytope(int q, int f_index) {
  check_qf(q, f_index);
  Polytope p;
  p.dimension_ambient = q - 1;
  for (int x = 0; x < q; ++x)
    for (int y = x; y < q; ++y)
      p.inequalities.push_back({grid_row(q, {{x, 1}, {y, 1}, {x + y, -1}}), 0, Relation::GEQ});
  add_symmetry(p, q, f_index);
  return p;
}

Polytope build_triple_system_polytope(int q, int f_index) {
  check_qf(q, f_index);
  Polytope p;
  p.dimension_ambient = q - 1;
  for (int i = 1; i < q; ++i)
    for (int j = i; j < q; ++j) {
      int k = mod(f_index - i - j, q);
      if (k < j || k == 0) continue;
      p.inequalities.push_back({grid_row(q, {{i, 1}, {j, 1}, {k, 1}}), 1, Relation::GEQ});
    }
  add_symmetry(p, q, f_index);
  return p;
}

GridFunction function_from_vertex(int q, int f_index, const Vector& vertex) {
  if (static_cast<int>(vertex.size()) != q - 1) throw ArgumentError("vertex has wrong dimension");
  Vector v(q);
  for (int i = 1; i < q; ++i) v[i] = vertex[i - 1];
  return GridFunction(q, f_index, std::move(v));
}

namespace {

LinearExpr expr_of(const Vector& a) {
  LinearExpr e;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) e.emplace_back(static_cast<int>(i), a[i]);
  return e;
}

struct LpModel {
  LpState lp;
  std::vector<int> eq_rows, ineq_rows;
};

LpModel make_lp(const Polytope& p) {
  LpModel m;
  for (int i = 0; i < p.dimension_ambient; ++i) m.lp.add_variable(std::nullopt, std::nullopt);
  for (auto& e : p.equalities) m.eq_rows.push_back(m.lp.add_row(expr_of(e.coefficients), e.rhs, e.rhs));
  for (auto& c : p.inequalities)
    m.ineq_rows.push_back(m.lp.add_row(expr_of(c.coefficients), c.rhs, std::nullopt));
  return m;
}

// Indices of inequalities that hold with equality on all of p.
std::vector<int> implicit_equalities(LpModel& m, const Polytope& p) {
  std::vector<int> out;
  std::vector<char> loose(p.inequalities.size(), 0);
  for (size_t i = 0; i < p.inequalities.size(); ++i) {
    if (loose[i]) continue;
    int row = m.ineq_rows[i];
    auto r = m.lp.exceeds({{row, Fraction(1)}}, p.inequalities[i].rhs);
    if (!r) throw InfeasibleError("polytope is empty");
    if (!*r) {
      out.push_back(static_cast<int>(i));
      continue;
    }
    // The current point is a witness for every row it leaves strict.
    for (size_t j = i; j < p.inequalities.size(); ++j)
      if (m.lp.value(m.ineq_rows[j]) > p.inequalities[j].rhs) loose[j] = 1;
  }
  return out;
}

Vector with_rhs(const LinearConstraint& c) {
  Vector v = c.coefficients;
  v.push_back(c.rhs);
  return v;
}

}  // namespace

int explicit_dimension(const Polytope& p) {
  Matrix rows;
  for (auto& e : p.equalities) rows.push_back(e.coefficients);
  return p.dimension_ambient - rank(rows);
}

int affine_dimension(const Polytope& p) {
  LpModel m = make_lp(p);
  if (!m.lp.feasible()) throw InfeasibleError("polytope is empty");
  Matrix rows;
  for (auto& e : p.equalities) rows.push_back(e.coefficients);
  for (int i : implicit_equalities(m, p)) rows.push_back(p.inequalities[i].coefficients);
  return p.dimension_ambient - rank(rows);
}

Polytope remove_redundant(const Polytope& p) {
  LpModel m = make_lp(p);
  if (!m.lp.feasible()) throw InfeasibleError("remove_redundant: polytope is empty");
  auto implicit = implicit_equalities(m, p);
  std::vector<char> is_implicit(p.inequalities.size(), 0);
  for (int i : implicit) is_implicit[i] = 1;

  Polytope out;
  out.dimension_ambient = p.dimension_ambient;
  EchelonBasis basis(p.dimension_ambient + 1);
  auto keep_equality = [&](const LinearConstraint& c) {
    if (basis.add(with_rhs(c))) out.equalities.push_back({c.coefficients, c.rhs, Relation::EQ});
  };
  for (auto& e : p.equalities) keep_equality(e);
  for (int i : implicit) keep_equality(p.inequalities[i]);

  // One LP per inequality: drop it, then try to push below its rhs.
  for (size_t i = 0; i < p.inequalities.size(); ++i) {
    if (is_implicit[i]) {
      m.lp.set_upper(m.ineq_rows[i], p.inequalities[i].rhs);
      continue;
    }
    int row = m.ineq_rows[i];
    m.lp.set_lower(row, std::nullopt);
    auto r = m.lp.exceeds({{row, Fraction(-1)}}, -p.inequalities[i].rhs);
    if (r && *r) {
      m.lp.set_lower(row, p.inequalities[i].rhs);
      out.inequalities.push_back(p.inequalities[i]);
    }
  }
  return out;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool subset(const Bits& a, const Bits& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

int popcount(const Bits& a) {
  int n = 0;
  for (auto w : a) n += __builtin_popcountll(w);
  return n;
}

struct Ray {
  IntVector y;
  Bits zero;
};

void primitive(IntVector& v) {
  Integer g = 0;
  for (auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

// Extreme rays of the pointed cone {y : rows . y >= 0}, double description.
std::vector<IntVector> cone_rays(const IntMatrix& rows, int d) {
  int nrows = static_cast<int>(rows.size());
  int words = (nrows + 63) / 64;
  // Initial simplicial cone from the first d independent rows.
  EchelonBasis eb(d);
  std::vector<int> init;
  for (int i = 0; i < nrows && static_cast<int>(init.size()) < d; ++i)
    if (eb.add(rows[i])) init.push_back(i);
  if (static_cast<int>(init.size()) < d) throw UnboundedError("enumerate_vertices: polyhedron is not bounded");
  Matrix B(d, Vector(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B[i][j] = Fraction(rows[init[i]][j]);
  // Columns of B^{-1}: solve B r = e_k.
  std::vector<Ray> rays;
  for (int k = 0; k < d; ++k) {
    Vector e(d), r;
    e[k] = 1;
    solve_particular(B, e, d, r);
    Integer den = 1;
    for (auto& x : r) den = lcm(den, x.get_den());
    Ray ray;
    ray.y.resize(d);
    for (int j = 0; j < d; ++j) ray.y[j] = r[j].get_num() * (den / r[j].get_den());
    primitive(ray.y);
    ray.zero.assign(words, 0);
    for (int i = 0; i < d; ++i)
      if (i != k) ray.zero[init[i] / 64] |= 1ULL << (init[i] % 64);
    rays.push_back(std::move(ray));
  }
  std::vector<char> used(nrows, 0);
  for (int i : init) used[i] = 1;
  for (int h = 0; h < nrows; ++h) {
    if (used[h]) continue;
    std::vector<Integer> s(rays.size());
    std::vector<int> pos, neg, zer;
    for (size_t r = 0; r < rays.size(); ++r) {
      s[r] = dot(rows[h], rays[r].y);
      int sg = sgn(s[r]);
      (sg > 0 ? pos : sg < 0 ? neg : zer).push_back(static_cast<int>(r));
    }
    if (neg.empty()) {
      for (int r : zer) rays[r].zero[h / 64] |= 1ULL << (h % 64);
      continue;
    }
    std::vector<Ray> next;
    Bits z(words);
    for (int p : pos) {
      for (int n : neg) {
        for (int w = 0; w < words; ++w) z[w] = rays[p].zero[w] & rays[n].zero[w];
        if (popcount(z) < d - 2) continue;
        bool adjacent = true;
        for (size_t r = 0; r < rays.size() && adjacent; ++r)
          if (static_cast<int>(r) != p && static_cast<int>(r) != n && subset(z, rays[r].zero)) adjacent = false;
        if (!adjacent) continue;
        Ray nr;
        nr.y.resize(d);
        Integer sp = s[p], sn = -s[n];
        for (int j = 0; j < d; ++j) nr.y[j] = sp * rays[n].y[j] + sn * rays[p].y[j];
        primitive(nr.y);
        nr.zero = z;
        nr.zero[h / 64] |= 1ULL << (h % 64);
        next.push_back(std::move(nr));
      }
    }
    for (int r : zer) {
      rays[r].zero[h / 64] |= 1ULL << (h % 64);
      next.push_back(std::move(rays[r]));
    }
    for (int r : pos) next.push_back(std::move(rays[r]));
    rays = std::move(next);
  }
  std::vector<IntVector> out;
  for (auto& r : rays) out.push_back(std::move(r.y));
  return out;
}

}  // namespace

std::vector<Vector> enumerate_vertices(const Polytope& p_in, const EnumerateOptions& opt) {
  int n = p_in.dimension_ambient;
  {
    LpModel m = make_lp(p_in);
    if (!m.lp.feasible()) return {};
  }
  const Polytope* pp = &p_in;
  Polytope reduced;
  if (opt.auto_redund && explicit_dimension(p_in) >= opt.redund_min_dimension) {
    reduced = remove_redundant(p_in);
    pp = &reduced;
  }
  const Polytope& p = *pp;

  // Parametrize the explicit affine hull: x = x0 + N t.
  Matrix A;
  Vector b;
  for (auto& e : p.equalities) {
    A.push_back(e.coefficients);
    b.push_back(e.rhs);
  }
  Vector x0;
  if (!solve_particular(A, b, n, x0)) return {};
  Matrix N = nullspace(A, n);  // k vectors of length n
  int k = static_cast<int>(N.size());

  // Homogenized rows over (t0, t): (a.N) t + (a.x0 - rhs) t0 >= 0.
  std::set<IntVector> seen;
  IntMatrix rows;
  {
    IntVector r0(k + 1);
    r0[0] = 1;
    rows.push_back(r0);
    seen.insert(r0);
  }
  std::vector<IntMatrix::value_type> body;
  for (auto& c : p.inequalities) {
    Vector g(k + 1);
    Fraction ax0 = 0;
    for (int i = 0; i < n; ++i)
      if (c.coefficients[i] != 0) ax0 += c.coefficients[i] * x0[i];
    g[0] = ax0 - c.rhs;
    bool zero = true;
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < n; ++i)
        if (c.coefficients[i] != 0 && N[j][i] != 0) g[j + 1] += c.coefficients[i] * N[j][i];
      if (g[j + 1] != 0) zero = false;
    }
    if (zero) {
      if (g[0] < 0) return {};
      continue;
    }
    Integer den = 1;
    for (auto& x : g) den = lcm(den, x.get_den());
    IntVector r(k + 1);
    for (int j = 0; j <= k; ++j) r[j] = g[j].get_num() * (den / g[j].get_den());
    primitive(r);
    if (seen.insert(r).second) body.push_back(std::move(r));
  }
  std::sort(body.begin(), body.end());
  for (auto& r : body) rows.push_back(std::move(r));

  std::vector<Vector> verts;
  if (k == 0) {
    verts.push_back(x0);
  } else {
    for (auto& y : cone_rays(rows, k + 1)) {
      if (y[0] == 0) throw UnboundedError("enumerate_vertices: polyhedron is not bounded");
      Vector x = x0;
      for (int j = 0; j < k; ++j) {
        if (y[j + 1] == 0) continue;
        Fraction t(y[j + 1], y[0]);
        t.canonicalize();
        for (int i = 0; i < n; ++i)
          if (N[j][i] != 0) x[i] += t * N[j][i];
      }
      verts.push_back(std::move(x));
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

void write_h_representation(const Polytope& p, std::ostream& out, const std::string& name) {
  out << name << "\nH-representation\n";
  size_t ne = p.equalities.size();
  if (ne) {
    out << "linearity " << ne;
    for (size_t i = 1; i <= ne; ++i) out << ' ' << i;
    out << '\n';
  }
  out << "begin\n" << ne + p.inequalities.size() << ' ' << p.dimension_ambient + 1 << " rational\n";
  auto row = [&](const LinearConstraint& c) {
    out << to_string(-c.rhs);
    for (auto& a : c.coefficients) out << ' ' << to_string(a);
    out << '\n';
  };
  for (auto& e : p.equalities) row(e);
  for (auto& c : p.inequalities) row(c);
  out << "end\n";
}

namespace {

// Returns rows and the set of linearity indices (1-based).
std::vector<Vector> read_lrs_body(std::istream& in, const char* kind, std::set<int>& linearity, int& cols) {
  std::string line;
  bool seen_kind = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == kind) seen_kind = true;
    else if (tok == "linearity") {
      int cnt;
      ls >> cnt;
      for (int i = 0, v; i < cnt && ls >> v; ++i) linearity.insert(v);
    } else if (tok == "begin") {
      break;
    }
  }
  if (!seen_kind) throw ParseError(std::string("missing ") + kind + " header");
  int m;
  std::string type;
  if (!(in >> m >> cols >> type)) throw ParseError("bad counts line");
  std::vector<Vector> rows(m, Vector(cols));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < cols; ++j) {
      std::string t;
      if (!(in >> t)) throw ParseError("truncated matrix");
      rows[i][j] = parse_fraction(t);
    }
  std::string end;
  in >> end;
  if (end != "end") throw ParseError("missing end");
  return rows;
}

}  // namespace

Polytope read_h_representation(std::istream& in) {
  std::set<int> lin;
  int cols = 0;
  auto rows = read_lrs_body(in, "H-representation", lin, cols);
  Polytope p;
  p.dimension_ambient = cols - 1;
  for (size_t i = 0; i < rows.size(); ++i) {
    LinearConstraint c;
    c.rhs = -rows[i][0];
    c.coefficients.assign(rows[i].begin() + 1, rows[i].end());
    if (lin.count(static_cast<int>(i) + 1)) {
      c.relation = Relation::EQ;
      p.equalities.push_back(std::move(c));
    } else {
      p.inequalities.push_back(std::move(c));
    }
  }
  return p;
}

void write_v_representation(const std::vector<Vector>& vertices, int dim, std::ostream& out,
                            const std::string& name) {
  out << name << "\nV-representation\nbegin\n" << vertices.size() << ' ' << dim + 1 << " rational\n";
  for (auto& v : vertices) {
    out << 1;
    for (auto& x : v) out << ' ' << to_string(x);
    out << '\n';
  }
  out << "end\n";
}

std::vector<Vector> read_v_representation(std::istream& in) {
  std::set<int> lin;
  int cols = 0;
  auto rows = read_lrs_body(in, "V-representation", lin, cols);
  std::vector<Vector> out;
  for (auto& r : rows) {
    if (r[0] != 1) throw ParseError("only vertices (leading 1) are supported");
    out.emplace_back(r.begin() + 1, r.end());
  }
  return out;
}

}  // namespace gj
