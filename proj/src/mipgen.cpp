#include "gj/mipgen.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "gj/errors.hpp"

namespace gj {

namespace {

const char* face_prefix(FaceKind k) {
  switch (k) {
    case FaceKind::Vertex: return "p";
    case FaceKind::HEdge: return "h";
    case FaceKind::VEdge: return "v";
    case FaceKind::DEdge: return "d";
    case FaceKind::LowerTriangle: return "l";
    case FaceKind::UpperTriangle: return "u";
  }
  return "?";
}

std::string pi_name(long x, int q) { return "pi_" + std::to_string(mod(x, q)); }
std::string vertex_name(long x, long y, int q) { return face_variable({FaceKind::Vertex, mod(x, q), mod(y, q)}, q); }

constexpr FaceKind kAllKinds[] = {FaceKind::Vertex,       FaceKind::LowerTriangle, FaceKind::UpperTriangle,
                                  FaceKind::HEdge,        FaceKind::VEdge,         FaceKind::DEdge};

// Canonical faces of one kind in (x, y) order.
std::vector<Face> canonical_faces(FaceKind kind, int q) {
  std::set<Face> seen;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      Face c = canonical({kind, x, y}, q);
      if (c.kind == kind) seen.insert(c);
    }
  return {seen.begin(), seen.end()};
}

std::vector<std::string> unique_names(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

using Terms = std::vector<std::pair<Fraction, std::string>>;

void check_common(int q, int f_index, int k, int maxstep, int m) {
  if (q < 2) throw ArgumentError("q must be at least 2");
  if (f_index <= 0 || f_index >= q) throw ArgumentError("f_index must lie in 1..q-1");
  if (k < 1 || k > q) throw ArgumentError("k must lie in 1..q");
  if (maxstep < 0) throw ArgumentError("maxstep must be nonnegative");
  if (m < 2) throw ArgumentError("m must be at least 2");
}

std::string c_name(int z, int i) { return "c_" + std::to_string(z) + "_" + std::to_string(i); }

// Edge variables joining intervals x and z.
std::vector<std::string> connecting_edges(int x, int z, int q) {
  return unique_names({face_variable({FaceKind::DEdge, x, z}, q),
                       face_variable({FaceKind::HEdge, x, mod(z - x, q)}, q),
                       face_variable({FaceKind::VEdge, mod(x - z, q), z}, q)});
}

std::string g_name(int x, int z) {
  if (x > z) std::swap(x, z);
  return "g_" + std::to_string(x) + "_" + std::to_string(z);
}

std::string w_name(int x, int z, int i) {
  return "w_" + std::to_string(x) + "_" + std::to_string(z) + "_" + std::to_string(i);
}

// Triangle variables whose projections contain interval z, for every z.
std::vector<std::vector<std::string>> covering_triangles(int q) {
  std::vector<std::vector<std::string>> out(q);
  for (FaceKind kind : {FaceKind::LowerTriangle, FaceKind::UpperTriangle})
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        Face f{kind, x, y};
        Projections p = projections(f, q);
        std::string name = face_variable(f, q);
        for (int z : {p.p1, p.p2, p.p3}) out[z].push_back(name);
      }
  for (auto& v : out) v = unique_names(std::move(v));
  return out;
}

std::string format_number(const Fraction& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  Integer den = v.get_den();
  int twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) den /= 2, ++twos;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) den /= 5, ++fives;
  if (den != 1) throw InvariantError("LP coefficient " + to_string(v) + " has no finite decimal form");
  unsigned digits = static_cast<unsigned>(std::max(twos, fives));
  Integer scaled = v.get_num() * pow10(digits) / v.get_den();
  bool neg = scaled < 0;
  std::string s = Integer(abs(scaled)).get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

void write_terms(std::ostream& out, const MipTerms& terms, const MipModel& model, size_t indent) {
  size_t col = indent;
  bool first = true;
  for (const auto& [var, coef] : terms) {
    std::string piece;
    if (coef < 0)
      piece = "- ";
    else if (!first)
      piece = "+ ";
    Fraction a = abs(coef);
    if (a != 1) piece += format_number(a) + " ";
    piece += model.variables()[var].name;
    if (col + piece.size() > 200) {
      out << "\n   ";
      col = 3;
    } else if (!first) {
      out << " ";
      ++col;
    }
    out << piece;
    col += piece.size();
    first = false;
  }
}

const char* sense_text(RowSense s) {
  switch (s) {
    case RowSense::LE: return "<=";
    case RowSense::GE: return ">=";
    case RowSense::EQ: return "=";
  }
  return "=";
}

std::string lower_text(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_number_token(const std::string& t) {
  if (t.empty()) return false;
  size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  return i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '.');
}

std::optional<Fraction> parse_bound_value(const std::string& t, bool* infinite, int* sign) {
  std::string l = lower_text(t);
  *infinite = false;
  if (l == "inf" || l == "+inf" || l == "infinity" || l == "+infinity") {
    *infinite = true;
    *sign = 1;
    return std::nullopt;
  }
  if (l == "-inf" || l == "-infinity") {
    *infinite = true;
    *sign = -1;
    return std::nullopt;
  }
  if (!is_number_token(t)) return std::nullopt;
  return parse_fraction(t);
}

}  // namespace

const char* cover_type_name(CoverType t) {
  switch (t) {
    case CoverType::Standard: return "standard";
    case CoverType::Fulldim: return "fulldim";
    case CoverType::FulldimCovers: return "fulldim_covers";
  }
  return "standard";
}

CoverType parse_cover_type(const std::string& s) {
  if (s == "standard") return CoverType::Standard;
  if (s == "fulldim") return CoverType::Fulldim;
  if (s == "fulldim_covers") return CoverType::FulldimCovers;
  throw ArgumentError("unknown cover type '" + s + "' (expected standard, fulldim or fulldim_covers)");
}

int MipModel::add_variable(const std::string& name, VarType type, std::optional<Fraction> lower,
                           std::optional<Fraction> upper) {
  if (index_.count(name)) throw InvariantError("duplicate variable " + name);
  int id = static_cast<int>(vars_.size());
  vars_.push_back({name, type, std::move(lower), std::move(upper)});
  index_.emplace(name, id);
  return id;
}

int MipModel::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ArgumentError("unknown variable " + name);
  return it->second;
}

MipTerms MipModel::resolve(const std::vector<std::pair<Fraction, std::string>>& terms) const {
  std::map<int, Fraction> acc;
  for (const auto& [c, name] : terms) acc[index(name)] += c;
  MipTerms out;
  for (auto& [v, c] : acc)
    if (c != 0) out.emplace_back(v, c);
  return out;
}

void MipModel::add_row(const std::string& name, const std::vector<std::pair<Fraction, std::string>>& terms,
                       RowSense sense, const Fraction& rhs) {
  if (row_index_.count(name)) throw InvariantError("duplicate row " + name);
  row_index_.emplace(name, static_cast<int>(rows_.size()));
  rows_.push_back({name, resolve(terms), sense, rhs});
}

void MipModel::set_objective(const std::vector<std::pair<Fraction, std::string>>& terms, bool max) {
  objective_ = resolve(terms);
  maximize = max;
}

void MipModel::fix(const std::string& name, const Fraction& value) {
  auto& v = variable(name);
  v.lower = value;
  v.upper = value;
}

int MipModel::count_rows(const std::string& prefix) const {
  return static_cast<int>(std::count_if(rows_.begin(), rows_.end(),
                                        [&](const MipRow& r) { return r.name.rfind(prefix, 0) == 0; }));
}

int MipModel::count_variables(const std::string& prefix) const {
  return static_cast<int>(std::count_if(vars_.begin(), vars_.end(),
                                        [&](const MipVariable& v) { return v.name.rfind(prefix, 0) == 0; }));
}

bool equivalent(const MipModel& a, const MipModel& b) {
  if (a.variables().size() != b.variables().size() || a.rows().size() != b.rows().size()) return false;
  if (a.maximize != b.maximize) return false;
  for (const auto& v : a.variables()) {
    if (!b.has(v.name)) return false;
    if (!(b.variables()[b.index(v.name)] == v)) return false;
  }
  auto named = [](const MipModel& m, const MipTerms& t) {
    std::map<std::string, Fraction> out;
    for (const auto& [v, c] : t) out[m.variables()[v].name] = c;
    return out;
  };
  std::map<std::string, const MipRow*> brows;
  for (const auto& r : b.rows()) brows[r.name] = &r;
  for (const auto& r : a.rows()) {
    auto it = brows.find(r.name);
    if (it == brows.end()) return false;
    const MipRow& s = *it->second;
    if (r.sense != s.sense || r.rhs != s.rhs || named(a, r.terms) != named(b, s.terms)) return false;
  }
  return named(a, a.objective()) == named(b, b.objective());
}

std::string face_variable(const Face& f, int q) {
  Face c = canonical(f, q);
  return std::string(face_prefix(c.kind)) + "_" + std::to_string(c.x) + "_" + std::to_string(c.y);
}

MipModel build_mip(int q, int f_index, int k, int maxstep, int m, CoverType type) {
  check_common(q, f_index, k, maxstep, m);
  MipModel model;
  model.q = q;
  model.f_index = f_index;
  model.k = k;
  model.maxstep = type == CoverType::FulldimCovers ? 0 : maxstep;
  model.epsilon = Fraction(1, m);
  model.epsilon_prime = Fraction(1, m);
  const Fraction fm(m), fq(q);

  // Face binaries and inclusion constraints.
  for (FaceKind kind : kAllKinds)
    for (const Face& f : canonical_faces(kind, q)) model.add_binary(face_variable(f, q));
  for (FaceKind kind : kAllKinds) {
    if (kind == FaceKind::Vertex) continue;
    for (const Face& f : canonical_faces(kind, q)) {
      std::string name = face_variable(f, q);
      std::vector<std::string> cs;
      for (auto [a, b] : corners(f, q)) cs.push_back(vertex_name(a, b, q));
      cs = unique_names(cs);
      Terms hi{{1, name}};
      for (const auto& c : cs) {
        model.add_row("incl_lo_" + name + "_" + c, {{1, name}, {-1, c}}, RowSense::GE, 0);
        hi.emplace_back(-1, c);
      }
      model.add_row("incl_hi_" + name, hi, RowSense::LE, 0);
    }
  }

  // Function values.
  for (int x = 0; x < q; ++x) model.add_variable(pi_name(x, q), VarType::Continuous, Fraction(0), Fraction(1));
  model.add_row("pi0", {{1, pi_name(0, q)}}, RowSense::EQ, 0);
  for (int x = 0; x < q; ++x)
    for (int y = x; y < q; ++y) {
      std::string p = vertex_name(x, y, q);
      Terms delta{{1, pi_name(x, q)}, {1, pi_name(y, q)}, {-1, pi_name(x + y, q)}};
      Terms lo, hi;
      for (const auto& [c, v] : delta) {
        lo.emplace_back(c * fm, v);
        hi.emplace_back(c, v);
      }
      lo.emplace_back(-1, p);
      hi.emplace_back(-2, p);
      std::string tag = std::to_string(x) + "_" + std::to_string(y);
      model.add_row("sub_lo_" + tag, lo, RowSense::GE, 0);
      model.add_row("sub_hi_" + tag, hi, RowSense::LE, 0);
    }
  for (int x = 0; x < q; ++x) {
    int y = mod(f_index - x, q);
    if (y < x) continue;
    model.add_row("sym_" + std::to_string(x), {{1, pi_name(x, q)}, {1, pi_name(y, q)}}, RowSense::EQ, 1);
  }

  // Slopes and their assignment to intervals.
  auto s_name = [](int j) { return "s_" + std::to_string(j); };
  auto delta_name = [](int x, int j) { return "delta_" + std::to_string(x) + "_" + std::to_string(j); };
  for (int j = 1; j <= k; ++j) model.add_variable(s_name(j), VarType::Continuous, -fq, fq);
  for (int j = 1; j < k; ++j)
    model.add_row("gap_" + std::to_string(j), {{fm, s_name(j)}, {-fm, s_name(j + 1)}}, RowSense::GE, 1);
  for (int x = 0; x < q; ++x)
    for (int j = 1; j <= k; ++j) model.add_binary(delta_name(x, j));
  for (int x = 0; x < q; ++x) {
    Terms sum;
    for (int j = 1; j <= k; ++j) sum.emplace_back(1, delta_name(x, j));
    model.add_row("assign_" + std::to_string(x), sum, RowSense::EQ, 1);
    for (int j = 1; j <= k; ++j) {
      std::string tag = std::to_string(x) + "_" + std::to_string(j);
      Terms base{{1, s_name(j)}, {fq, pi_name(x, q)}, {-fq, pi_name(x + 1, q)}};
      Terms le = base, ge = base;
      le.emplace_back(2 * fq, delta_name(x, j));
      ge.emplace_back(-2 * fq, delta_name(x, j));
      model.add_row("slope_le_" + tag, le, RowSense::LE, 2 * fq);
      model.add_row("slope_ge_" + tag, ge, RowSense::GE, -2 * fq);
    }
  }
  for (int j = 1; j <= k; ++j) {
    Terms sum;
    for (int x = 0; x < q; ++x) sum.emplace_back(1, delta_name(x, j));
    model.add_row("use_" + std::to_string(j), sum, RowSense::GE, 1);
  }

  // Directly covered intervals.
  auto cover = covering_triangles(q);
  for (int z = 0; z < q; ++z) model.add_binary(c_name(z, 0));
  for (int z = 0; z < q; ++z) {
    Terms all{{1, c_name(z, 0)}};
    for (const auto& t : cover[z]) {
      model.add_row("cov0_" + std::to_string(z) + "_" + t, {{1, c_name(z, 0)}, {-1, t}}, RowSense::LE, 0);
      all.emplace_back(-1, t);
    }
    model.add_row("cov0_" + std::to_string(z), all, RowSense::GE, -Fraction(static_cast<long>(cover[z].size()) - 1));
  }

  // Indirectly covered intervals.
  if (model.maxstep > 0) {
    for (int x = 0; x < q; ++x)
      for (int z = x + 1; z < q; ++z) {
        std::string g = g_name(x, z);
        model.add_binary(g);
        auto edges = connecting_edges(x, z, q);
        Terms ge{{1, g}};
        for (const auto& e : edges) {
          model.add_row("g_le_" + g.substr(2) + "_" + e, {{1, g}, {-1, e}}, RowSense::LE, 0);
          ge.emplace_back(-1, e);
        }
        model.add_row("g_ge_" + g.substr(2), ge, RowSense::GE, -Fraction(static_cast<long>(edges.size()) - 1));
      }
    for (int i = 1; i <= model.maxstep; ++i) {
      for (int z = 0; z < q; ++z) model.add_binary(c_name(z, i));
      for (int x = 0; x < q; ++x)
        for (int z = 0; z < q; ++z) {
          if (x == z) continue;
          std::string w = w_name(x, z, i);
          model.add_binary(w);
          std::string tag = w.substr(2);
          model.add_row("w_ge_g_" + tag, {{1, w}, {-1, g_name(x, z)}}, RowSense::GE, 0);
          model.add_row("w_ge_c_" + tag, {{1, w}, {-1, c_name(x, i - 1)}}, RowSense::GE, 0);
          model.add_row("w_le_" + tag, {{1, w}, {-1, g_name(x, z)}, {-1, c_name(x, i - 1)}}, RowSense::LE, 0);
        }
      for (int z = 0; z < q; ++z) {
        std::string tag = std::to_string(z) + "_" + std::to_string(i);
        model.add_row("step_prev_" + tag, {{1, c_name(z, i)}, {-1, c_name(z, i - 1)}}, RowSense::LE, 0);
        Terms all{{1, c_name(z, i)}, {-1, c_name(z, i - 1)}};
        for (int x = 0; x < q; ++x) {
          if (x == z) continue;
          model.add_row("step_w_" + w_name(x, z, i).substr(2), {{1, c_name(z, i)}, {-1, w_name(x, z, i)}},
                        RowSense::LE, 0);
          all.emplace_back(-1, w_name(x, z, i));
        }
        model.add_row("step_all_" + tag, all, RowSense::GE, -Fraction(q - 1));
      }
    }
  }
  for (int z = 0; z < q; ++z) model.fix(c_name(z, model.maxstep), 0);

  // No isolated additive vertices away from the trivial lines.
  if (type != CoverType::Standard) {
    for (const Face& f : canonical_faces(FaceKind::Vertex, q)) {
      if (f.x == 0 || f.y == 0 || mod(f.x + f.y, q) == f_index) continue;
      std::vector<std::string> tris = unique_names({
          face_variable({FaceKind::LowerTriangle, f.x, f.y}, q),
          face_variable({FaceKind::LowerTriangle, mod(f.x - 1, q), f.y}, q),
          face_variable({FaceKind::LowerTriangle, f.x, mod(f.y - 1, q)}, q),
          face_variable({FaceKind::UpperTriangle, f.x, mod(f.y - 1, q)}, q),
          face_variable({FaceKind::UpperTriangle, mod(f.x - 1, q), mod(f.y - 1, q)}, q),
          face_variable({FaceKind::UpperTriangle, mod(f.x - 1, q), f.y}, q),
      });
      std::string p = face_variable(f, q);
      Terms row{{1, p}};
      for (const auto& t : tris) row.emplace_back(-1, t);
      model.add_row("iso_" + p.substr(2), row, RowSense::GE, -Fraction(static_cast<long>(tris.size()) - 1));
    }
  }

  Terms obj{{1, s_name(1)}};
  if (k > 1) obj.emplace_back(-1, s_name(k));
  model.set_objective(obj, true);
  return model;
}

MipModel build_mip_2q(int q, int f_index, int a_index, int k, int maxstep, int m) {
  check_common(q, f_index, k, maxstep, m);
  if (a_index <= 0 || a_index >= f_index) throw ArgumentError("a_index must satisfy 0 < a < f_index");
  int t = f_index - 2 * a_index + 1;
  if (t <= 0) throw ArgumentError("translation f_index - 2a + 1 must be positive");
  MipModel model = build_mip(q, f_index, k, maxstep, m, CoverType::Standard);
  const int uncovered[] = {a_index - 1, f_index - a_index};
  for (int z : uncovered)
    for (int i = 0; i <= model.maxstep; ++i) model.fix(c_name(z, i), 1);
  for (int x : {a_index - 1, a_index}) model.fix(vertex_name(x, t, q), 0);
  model.fix(face_variable({FaceKind::HEdge, a_index - 1, t}, q), 0);
  return model;
}

std::string mip_filename(int q, int f_index, int k, int maxstep, int m, CoverType type) {
  std::string head = std::to_string(k) + "slope_q" + std::to_string(q) + "_f" + std::to_string(f_index);
  if (type == CoverType::Standard) return head + "_" + std::to_string(maxstep) + "maxstep_m" + std::to_string(m) + ".lp";
  return head + "_" + cover_type_name(type) + "_m" + std::to_string(m) + ".lp";
}

std::string mip_2q_filename(int q, int f_index, int a_index, int k, int maxstep, int m) {
  return "mip_q" + std::to_string(q) + "_f" + std::to_string(f_index) + "_a" + std::to_string(a_index) + "_" +
         std::to_string(k) + "slope_" + std::to_string(maxstep) + "maxstep_m" + std::to_string(m) + ".lp";
}

void write_lp(const MipModel& model, std::ostream& out) {
  out << "\\ gj-mip q=" << model.q << " f_index=" << model.f_index << " k=" << model.k
      << " maxstep=" << model.maxstep << " epsilon=" << to_string(model.epsilon)
      << " epsilon_prime=" << to_string(model.epsilon_prime) << "\n";
  out << (model.maximize ? "Maximize\n" : "Minimize\n") << " obj: ";
  if (model.objective().empty())
    out << "0 " << model.variables().front().name;
  else
    write_terms(out, model.objective(), model, 6);
  out << "\nSubject To\n";
  for (const auto& r : model.rows()) {
    out << " " << r.name << ": ";
    if (r.terms.empty())
      out << "0 " << model.variables().front().name;
    else
      write_terms(out, r.terms, model, r.name.size() + 3);
    out << " " << sense_text(r.sense) << " " << format_number(r.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : model.variables()) {
    bool binary = v.type == VarType::Binary;
    const std::optional<Fraction> def_lo = Fraction(0);
    const std::optional<Fraction> def_hi = binary ? std::optional<Fraction>(Fraction(1)) : std::nullopt;
    if (v.lower == def_lo && v.upper == def_hi) continue;
    if (v.lower && v.upper && *v.lower == *v.upper) {
      out << " " << v.name << " = " << format_number(*v.lower) << "\n";
    } else if (!v.lower && !v.upper) {
      out << " " << v.name << " free\n";
    } else {
      out << " " << (v.lower ? format_number(*v.lower) : std::string("-inf")) << " <= " << v.name << " <= "
          << (v.upper ? format_number(*v.upper) : std::string("+inf")) << "\n";
    }
  }
  out << "Binaries\n";
  size_t col = 0;
  for (const auto& v : model.variables()) {
    if (v.type != VarType::Binary) continue;
    if (col > 0 && col + v.name.size() > 200) {
      out << "\n";
      col = 0;
    }
    out << " " << v.name;
    col += v.name.size() + 1;
  }
  if (col > 0) out << "\n";
  out << "End\n";
}

MipModel read_lp(std::istream& in) {
  enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, Done };
  Section section = Section::None;
  MipModel model;
  std::set<std::string> explicit_bounds;
  std::vector<std::string> binaries;
  std::vector<std::vector<std::string>> bound_lines;
  bool maximize = true;
  std::vector<std::string> objective_tokens;
  std::vector<std::string> constraint_tokens;

  auto meta = [&](const std::string& comment) {
    std::istringstream ss(comment);
    std::string tok;
    ss >> tok;
    if (tok != "gj-mip") return;
    while (ss >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "q") model.q = std::stoi(val);
      else if (key == "f_index") model.f_index = std::stoi(val);
      else if (key == "k") model.k = std::stoi(val);
      else if (key == "maxstep") model.maxstep = std::stoi(val);
      else if (key == "epsilon") model.epsilon = parse_fraction(val);
      else if (key == "epsilon_prime") model.epsilon_prime = parse_fraction(val);
    }
  };

  std::string line;
  while (std::getline(in, line)) {
    auto bs = line.find('\\');
    if (bs != std::string::npos) {
      meta(line.substr(bs + 1));
      line = line.substr(0, bs);
    }
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    if (toks.empty()) continue;
    std::string head = lower_text(toks[0]);
    std::string two = toks.size() > 1 ? head + " " + lower_text(toks[1]) : head;
    if (head == "maximize" || head == "maximum" || head == "max" || head == "minimize" || head == "minimum" ||
        head == "min") {
      section = Section::Objective;
      maximize = head.rfind("max", 0) == 0;
      toks.erase(toks.begin());
    } else if (two == "subject to" || two == "such that") {
      section = Section::Constraints;
      toks.erase(toks.begin(), toks.begin() + 2);
    } else if (head == "st" || head == "s.t." || head == "st.") {
      section = Section::Constraints;
      toks.erase(toks.begin());
    } else if (head == "bounds" || head == "bound") {
      section = Section::Bounds;
      toks.erase(toks.begin());
    } else if (head == "binaries" || head == "binary" || head == "bin") {
      section = Section::Binaries;
      toks.erase(toks.begin());
    } else if (head == "generals" || head == "general" || head == "gen") {
      section = Section::Generals;
      toks.erase(toks.begin());
    } else if (head == "end") {
      section = Section::Done;
      continue;
    }
    switch (section) {
      case Section::Objective: objective_tokens.insert(objective_tokens.end(), toks.begin(), toks.end()); break;
      case Section::Constraints:
        constraint_tokens.insert(constraint_tokens.end(), toks.begin(), toks.end());
        break;
      case Section::Bounds:
        if (!toks.empty()) bound_lines.push_back(toks);
        break;
      case Section::Binaries: binaries.insert(binaries.end(), toks.begin(), toks.end()); break;
      case Section::Generals:
        if (!toks.empty()) throw ParseError("general integer variables are not supported");
        break;
      case Section::None:
        if (!toks.empty()) throw ParseError("LP text before the objective section: " + line);
        break;
      case Section::Done: break;
    }
  }

  auto ensure = [&](const std::string& name) {
    if (!model.has(name)) model.add_variable(name, VarType::Continuous, Fraction(0), std::nullopt);
  };
  // Parses one linear expression starting at i; stops at a sense token.
  auto parse_expr = [&](const std::vector<std::string>& toks, size_t& i) {
    std::vector<std::pair<Fraction, std::string>> terms;
    Fraction sign = 1;
    std::optional<Fraction> coef;
    for (; i < toks.size(); ++i) {
      const std::string& t = toks[i];
      if (t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>" || t == "<" || t == ">") break;
      if (t == "+") continue;
      if (t == "-") {
        sign = -sign;
        continue;
      }
      if (is_number_token(t)) {
        coef = parse_fraction(t);
        continue;
      }
      if (t.back() == ':') throw ParseError("unexpected label " + t);
      std::string name = t;
      if (name[0] == '+' || name[0] == '-') {
        if (name[0] == '-') sign = -sign;
        name = name.substr(1);
      }
      ensure(name);
      terms.emplace_back(sign * coef.value_or(Fraction(1)), name);
      sign = 1;
      coef.reset();
    }
    if (coef) throw ParseError("dangling coefficient in LP expression");
    return terms;
  };

  {
    const auto& toks = objective_tokens;
    size_t i = 0;
    if (i < toks.size() && toks[i].back() == ':') ++i;
    auto terms = parse_expr(toks, i);
    if (i != toks.size()) throw ParseError("malformed objective");
    model.set_objective(terms, maximize);
  }
  {
    const auto& toks = constraint_tokens;
    size_t i = 0;
    int unnamed = 0;
    while (i < toks.size()) {
      std::string name;
      if (toks[i].back() == ':') {
        name = toks[i].substr(0, toks[i].size() - 1);
        ++i;
      } else {
        name = "R" + std::to_string(++unnamed);
      }
      auto terms = parse_expr(toks, i);
      if (i >= toks.size()) throw ParseError("constraint " + name + " has no relation");
      std::string op = toks[i++];
      RowSense sense = (op == "<=" || op == "=<" || op == "<") ? RowSense::LE
                       : (op == ">=" || op == "=>" || op == ">") ? RowSense::GE
                                                                 : RowSense::EQ;
      if (i >= toks.size()) throw ParseError("constraint " + name + " has no right-hand side");
      Fraction rhs;
      if (toks[i] == "-" && i + 1 < toks.size()) {
        rhs = -parse_fraction(toks[i + 1]);
        i += 2;
      } else {
        if (!is_number_token(toks[i])) throw ParseError("constraint " + name + " has a non-numeric right-hand side");
        rhs = parse_fraction(toks[i++]);
      }
      model.add_row(name, terms, sense, rhs);
    }
  }
  for (const auto& b : bound_lines) {
    bool inf = false;
    int sign = 0;
    if (b.size() == 2 && lower_text(b[1]) == "free") {
      ensure(b[0]);
      auto& v = model.variable(b[0]);
      v.lower.reset();
      v.upper.reset();
      explicit_bounds.insert(b[0]);
    } else if (b.size() == 5) {  // lo <= x <= hi
      ensure(b[2]);
      auto& v = model.variable(b[2]);
      auto lo = parse_bound_value(b[0], &inf, &sign);
      v.lower = inf ? std::nullopt : lo;
      auto hi = parse_bound_value(b[4], &inf, &sign);
      v.upper = inf ? std::nullopt : hi;
      explicit_bounds.insert(b[2]);
    } else if (b.size() == 3) {
      bool name_first = !is_number_token(b[0]) && lower_text(b[0]).find("inf") == std::string::npos;
      const std::string& name = name_first ? b[0] : b[2];
      const std::string& val = name_first ? b[2] : b[0];
      std::string op = b[1];
      if (!name_first) op = op == "<=" ? ">=" : op == ">=" ? "<=" : op;
      ensure(name);
      auto& v = model.variable(name);
      auto x = parse_bound_value(val, &inf, &sign);
      if (!inf && !x) throw ParseError("bad bound value " + val);
      if (op == "=") {
        v.lower = x;
        v.upper = x;
      } else if (op == ">=") {
        v.lower = inf ? std::nullopt : x;
      } else if (op == "<=") {
        v.upper = inf ? std::nullopt : x;
      } else {
        throw ParseError("bad bound operator " + op);
      }
      explicit_bounds.insert(name);
    } else {
      std::string text;
      for (const auto& t : b) text += t + " ";
      throw ParseError("unrecognized bound line: " + text);
    }
  }
  for (const auto& name : binaries) {
    ensure(name);
    auto& v = model.variable(name);
    v.type = VarType::Binary;
    if (!explicit_bounds.count(name)) {
      v.lower = Fraction(0);
      v.upper = Fraction(1);
    }
  }
  return model;
}

namespace {

std::string write_model(const MipModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_lp(model, out);
  out.flush();
  if (!out) throw IoError("error while writing " + path);
  return path;
}

}  // namespace

std::string emit_mip(int q, int f_index, int k, int maxstep, int m, CoverType type, const std::string& path) {
  return write_model(build_mip(q, f_index, k, maxstep, m, type), path);
}

std::string emit_mip_2q(int q, int f_index, int a_index, int k, int maxstep, int m, const std::string& path) {
  return write_model(build_mip_2q(q, f_index, a_index, k, maxstep, m), path);
}

std::map<std::string, Fraction> assignment_from_function(const GridFunction& fn, const MipModel& model) {
  const int q = model.q;
  if (fn.q() != q || fn.f_index() != model.f_index) throw ArgumentError("function and model differ in q or f");
  std::map<std::string, Fraction> out;
  for (int x = 0; x < q; ++x) out[pi_name(x, q)] = fn[x];

  Painting paint = painting_from_function(fn);
  auto bit = [&](const Face& f) { return paint.color(f) == Color::Green ? 0 : 1; };
  for (FaceKind kind : kAllKinds)
    for (const Face& f : canonical_faces(kind, q)) {
      std::string name = face_variable(f, q);
      if (model.has(name)) out[name] = bit(f);
    }

  Vector slopes = distinct_slopes(fn);
  if (static_cast<int>(slopes.size()) != model.k)
    throw ArgumentError("function has " + std::to_string(slopes.size()) + " slopes, model expects " +
                        std::to_string(model.k));
  for (int j = 1; j <= model.k; ++j) out["s_" + std::to_string(j)] = slopes[j - 1];
  for (int x = 0; x < q; ++x) {
    Fraction s = (fn[x + 1] - fn[x]) * q;
    for (int j = 1; j <= model.k; ++j)
      out["delta_" + std::to_string(x) + "_" + std::to_string(j)] = slopes[j - 1] == s ? 1 : 0;
  }

  std::vector<int> c(q, 1);
  for (FaceKind kind : {FaceKind::LowerTriangle, FaceKind::UpperTriangle})
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        Face f{kind, x, y};
        if (paint.color(f) != Color::Green) continue;
        Projections p = projections(f, q);
        c[p.p1] = c[p.p2] = c[p.p3] = 0;
      }
  for (int z = 0; z < q; ++z) out[c_name(z, 0)] = c[z];
  std::vector<std::vector<int>> g(q, std::vector<int>(q, 1));
  for (int x = 0; x < q; ++x)
    for (int z = x + 1; z < q; ++z) {
      int val = 1;
      for (const auto& e : connecting_edges(x, z, q))
        if (out.count(e) && out[e] == 0) val = 0;
      g[x][z] = g[z][x] = val;
      if (model.has(g_name(x, z))) out[g_name(x, z)] = val;
    }
  for (int i = 1; i <= model.maxstep; ++i) {
    std::vector<int> next = c;
    for (int z = 0; z < q; ++z)
      for (int x = 0; x < q; ++x) {
        if (x == z) continue;
        int w = std::max(g[x][z], c[x]);
        out[w_name(x, z, i)] = w;
        if (w == 0) next[z] = 0;
      }
    c = next;
    for (int z = 0; z < q; ++z) out[c_name(z, i)] = c[z];
  }
  return out;
}

std::vector<std::string> check_assignment(const MipModel& model, const std::map<std::string, Fraction>& values) {
  std::vector<std::string> bad;
  std::vector<Fraction> val(model.variables().size());
  for (size_t i = 0; i < model.variables().size(); ++i) {
    const auto& v = model.variables()[i];
    auto it = values.find(v.name);
    if (it == values.end()) {
      bad.push_back("missing " + v.name);
      continue;
    }
    val[i] = it->second;
    if (v.lower && val[i] < *v.lower) bad.push_back("lower bound " + v.name);
    if (v.upper && val[i] > *v.upper) bad.push_back("upper bound " + v.name);
    if (v.type == VarType::Binary && val[i] != 0 && val[i] != 1) bad.push_back("integrality " + v.name);
  }
  for (const auto& r : model.rows()) {
    Fraction lhs = 0;
    for (const auto& [v, c] : r.terms) lhs += c * val[v];
    bool ok = r.sense == RowSense::LE ? lhs <= r.rhs : r.sense == RowSense::GE ? lhs >= r.rhs : lhs == r.rhs;
    if (!ok) bad.push_back(r.name);
  }
  return bad;
}

const std::string& SolutionFile::text(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) throw ParseError("solution is missing " + name);
  return it->second;
}

Fraction SolutionFile::exact(const std::string& name) const { return parse_fraction(text(name)); }

int SolutionFile::binary(const std::string& name) const {
  Fraction v = exact(name);
  const Fraction tol(1, 1000000);
  if (abs(v) <= tol) return 0;
  if (abs(v - 1) <= tol) return 1;
  throw ParseError("value of " + name + " is not within 1e-6 of 0 or 1: " + text(name));
}

SolutionFile parse_solution(std::istream& in) {
  SolutionFile sol;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::string name, value;
    if (!(ss >> name)) continue;
    if (!(ss >> value)) throw ParseError("solution line " + std::to_string(lineno) + " has no value");
    try {
      parse_fraction(value);
    } catch (const std::exception&) {
      throw ParseError("solution line " + std::to_string(lineno) + ": bad value '" + value + "'");
    }
    sol.values[name] = value;
  }
  return sol;
}

SolutionFile read_solution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return parse_solution(in);
}

void write_solution(const std::map<std::string, Fraction>& values, std::ostream& out, int decimal_digits) {
  out << "# Solution\n";
  for (const auto& [name, v] : values) {
    out << name << " ";
    if (decimal_digits < 0) {
      out << to_string(v) << "\n";
      continue;
    }
    Integer scale = pow10(static_cast<unsigned>(decimal_digits));
    Fraction shifted = v * scale + Fraction(1, 2);
    Integer n;
    mpz_fdiv_q(n.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    bool neg = n < 0;
    std::string s = Integer(abs(n)).get_str();
    if (static_cast<int>(s.size()) <= decimal_digits) s.insert(0, decimal_digits + 1 - s.size(), '0');
    if (decimal_digits > 0) s.insert(s.size() - decimal_digits, ".");
    out << (neg ? "-" : "") << s << "\n";
  }
}

Fraction rationalize(const std::string& text, const Integer& max_den) {
  if (text.find('/') != std::string::npos) return parse_fraction(text);
  Fraction v = parse_fraction(text);
  // Digits after the decimal point, adjusted by any exponent.
  long digits = 0;
  auto epos = text.find_first_of("eE");
  std::string mant = text.substr(0, epos);
  auto dot = mant.find('.');
  if (dot != std::string::npos) digits = static_cast<long>(mant.size() - dot - 1);
  if (epos != std::string::npos) digits -= std::stol(text.substr(epos + 1));
  Fraction half_ulp = digits >= 0 ? Fraction(Fraction(1, 2) / Fraction(pow10(static_cast<unsigned>(digits))))
                                  : Fraction(Fraction(pow10(static_cast<unsigned>(-digits))) / 2);
  const Fraction floor_tol(1, 1000000000), cap_tol(1, 1000000);
  Fraction tol = std::min(std::max(half_ulp, floor_tol), cap_tol);
  Fraction r = simplest_between(v - tol, v + tol);
  if (r.get_den() > max_den)
    throw RationalizationError("cannot snap " + text + " to a rational with denominator <= " + max_den.get_str() +
                               " (tolerance " + to_string(tol) + ", best " + to_string(r) + ")");
  return r;
}

GridFunction refind_function(const SolutionFile& sol, int q, int f_index) {
  if (q < 1) throw ArgumentError("q must be positive");
  Integer max_den = pow10(static_cast<unsigned>((q + 3) / 4));
  Vector values(q);
  for (int x = 0; x < q; ++x) {
    std::string name = pi_name(x, q);
    const std::string& t = sol.text(name);
    try {
      values[x] = rationalize(t, max_den);
    } catch (const RationalizationError& e) {
      throw RationalizationError(name + ": " + e.what());
    }
  }
  return GridFunction(q, f_index, std::move(values));
}

}  // namespace gj
