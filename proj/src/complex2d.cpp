#include "gj/complex2d.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "gj/errors.hpp"
#include "gj/linalg.hpp"

namespace gj {

const char* kind_name(FaceKind k) {
  switch (k) {
    case FaceKind::Vertex: return "vertex";
    case FaceKind::HEdge: return "hedge";
    case FaceKind::VEdge: return "vedge";
    case FaceKind::DEdge: return "dedge";
    case FaceKind::LowerTriangle: return "lower";
    case FaceKind::UpperTriangle: return "upper";
  }
  return "?";
}

const char* color_name(Color c) {
  switch (c) {
    case Color::Grey: return "grey";
    case Color::Green: return "green";
    case Color::White: return "white";
  }
  return "?";
}

bool is_triangle(FaceKind k) { return k == FaceKind::LowerTriangle || k == FaceKind::UpperTriangle; }
bool is_edge(FaceKind k) { return k == FaceKind::HEdge || k == FaceKind::VEdge || k == FaceKind::DEdge; }

Face canonical(Face f, int q) {
  f.x = mod(f.x, q);
  f.y = mod(f.y, q);
  switch (f.kind) {
    case FaceKind::HEdge:
      if (f.x >= f.y) return {FaceKind::VEdge, f.y, f.x};
      return f;
    case FaceKind::VEdge:
      if (f.x > f.y) return {FaceKind::HEdge, f.y, f.x};
      return f;
    default:
      if (f.x > f.y) std::swap(f.x, f.y);
      return f;
  }
}

std::vector<std::pair<int, int>> corners(const Face& f, int q) {
  int x = f.x, y = f.y;
  auto m = [q](int a, int b) { return std::make_pair(mod(a, q), mod(b, q)); };
  switch (f.kind) {
    case FaceKind::Vertex: return {m(x, y)};
    case FaceKind::HEdge: return {m(x, y), m(x + 1, y)};
    case FaceKind::VEdge: return {m(x, y), m(x, y + 1)};
    case FaceKind::DEdge: return {m(x, y + 1), m(x + 1, y)};
    case FaceKind::LowerTriangle: return {m(x, y), m(x + 1, y), m(x, y + 1)};
    case FaceKind::UpperTriangle: return {m(x, y + 1), m(x + 1, y + 1), m(x + 1, y)};
  }
  return {};
}

Projections projections(const Face& f, int q) {
  int x = mod(f.x, q), y = mod(f.y, q);
  switch (f.kind) {
    case FaceKind::Vertex: return {};
    case FaceKind::HEdge: return {x, -1, mod(x + y, q)};
    case FaceKind::VEdge: return {-1, y, mod(x + y, q)};
    case FaceKind::DEdge: return {x, y, -1};
    case FaceKind::LowerTriangle: return {x, y, mod(x + y, q)};
    case FaceKind::UpperTriangle: return {x, y, mod(x + y + 1, q)};
  }
  return {};
}

Painting::Painting(int q, int f_index) : q_(q), f_(f_index), colors_(6 * q * q, Color::Grey) {
  if (q < 1) throw ArgumentError("painting: q must be positive");
}

Color Painting::color(Face f) const { return colors_[index(canonical(f, q_))]; }
void Painting::set(Face f, Color c) { colors_[index(canonical(f, q_))] = c; }

std::vector<Face> Painting::faces(FaceKind k) const {
  std::vector<Face> out;
  for (int x = 0; x < q_; ++x)
    for (int y = x; y < q_; ++y) {
      Face f{k, x, y};
      if (canonical(f, q_) == f) out.push_back(f);
    }
  if (k == FaceKind::HEdge)  // HEdge(x,y) is canonical only for x < y
    out.erase(std::remove_if(out.begin(), out.end(), [](const Face& f) { return f.x == f.y; }), out.end());
  return out;
}

std::vector<Face> Painting::all_faces() const {
  std::vector<Face> out;
  for (int k = 0; k < 6; ++k) {
    auto fs = faces(static_cast<FaceKind>(k));
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

std::vector<Face> apply_inclusion(Painting& p) {
  std::vector<Face> changed;
  for (auto& f : p.all_faces()) {
    if (f.kind == FaceKind::Vertex || p.color(f) != Color::Grey) continue;
    bool all = true;
    for (auto [a, b] : corners(f, p.q()))
      if (p.color({FaceKind::Vertex, a, b}) != Color::Green) {
        all = false;
        break;
      }
    if (all) {
      p.set(f, Color::Green);
      changed.push_back(f);
    }
  }
  return changed;
}

void check_inclusion(const Painting& p) {
  for (auto& f : p.all_faces()) {
    if (f.kind == FaceKind::Vertex || p.color(f) != Color::Green) continue;
    for (auto [a, b] : corners(f, p.q()))
      if (p.color({FaceKind::Vertex, a, b}) != Color::Green)
        throw InvariantError(std::string("Green ") + kind_name(f.kind) + " has a non-Green corner");
  }
}

Painting painting_from_function(const GridFunction& fn) {
  int q = fn.q();
  Painting p(q, fn.f_index());
  for (int x = 0; x < q; ++x)
    for (int y = x; y < q; ++y)
      p.set({FaceKind::Vertex, x, y}, fn[x] + fn[y] == fn[x + y] ? Color::Green : Color::White);
  apply_inclusion(p);
  for (auto& f : p.all_faces())
    if (p.color(f) == Color::Grey) p.set(f, Color::White);
  return p;
}

Painting initial_painting(int q, int f_index) {
  Painting p(q, f_index);
  for (int y = 0; y < q; ++y) p.set({FaceKind::Vertex, 0, y}, Color::Green);
  for (int x = 0; x < q; ++x) p.set({FaceKind::Vertex, x, f_index - x}, Color::Green);
  apply_inclusion(p);
  return p;
}

std::string dump_painting(const Painting& p) {
  std::vector<std::tuple<std::string, int, int, std::string>> lines;
  for (auto& f : p.all_faces()) lines.emplace_back(kind_name(f.kind), f.x, f.y, color_name(p.color(f)));
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  for (auto& [k, x, y, c] : lines) out << k << ' ' << x << ' ' << y << ' ' << c << '\n';
  return out.str();
}

Painting parse_painting(const std::string& text, int q, int f_index) {
  static const std::map<std::string, FaceKind> kinds = {
      {"vertex", FaceKind::Vertex}, {"hedge", FaceKind::HEdge}, {"vedge", FaceKind::VEdge},
      {"dedge", FaceKind::DEdge},   {"lower", FaceKind::LowerTriangle}, {"upper", FaceKind::UpperTriangle}};
  static const std::map<std::string, Color> colors = {
      {"grey", Color::Grey}, {"green", Color::Green}, {"white", Color::White}};
  Painting p(q, f_index);
  std::istringstream in(text);
  std::string k, c;
  int x, y;
  while (in >> k >> x >> y >> c) {
    auto ki = kinds.find(k);
    auto ci = colors.find(c);
    if (ki == kinds.end() || ci == colors.end()) throw ParseError("bad painting line: " + k + " " + c);
    p.set({ki->second, x, y}, ci->second);
  }
  return p;
}

ComponentPartition::ComponentPartition(int q) : parent_(q), covered_(q, 0), count_(q) {
  for (int i = 0; i < q; ++i) parent_[i] = i;
}

int ComponentPartition::find(int z) const {
  while (parent_[z] != z) {
    parent_[z] = parent_[parent_[z]];
    z = parent_[z];
  }
  return z;
}

bool ComponentPartition::merge(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (b < a) std::swap(a, b);
  parent_[b] = a;
  covered_[a] = covered_[a] || covered_[b];
  --count_;
  return true;
}

void ComponentPartition::cover(int z) { covered_[find(z)] = 1; }

bool ComponentPartition::all_covered() const {
  for (int z = 0; z < size(); ++z)
    if (!covered(z)) return false;
  return true;
}

std::vector<int> ComponentPartition::uncovered() const {
  std::vector<int> out;
  for (int z = 0; z < size(); ++z)
    if (!covered(z)) out.push_back(z);
  return out;
}

std::vector<std::vector<int>> ComponentPartition::groups() const {
  std::map<int, std::vector<int>> by_root;
  for (int z = 0; z < size(); ++z) by_root[find(z)].push_back(z);
  std::vector<std::vector<int>> out;
  for (auto& [r, g] : by_root) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

bool ComponentPartition::same_partition(const ComponentPartition& o) const {
  if (size() != o.size() || groups() != o.groups()) return false;
  for (int z = 0; z < size(); ++z)
    if (covered(z) != o.covered(z)) return false;
  return true;
}

void ComponentPartition::add_face(const Face& f) {
  if (f.kind == FaceKind::Vertex) return;
  int q = size();
  Projections pr = projections(f, q);
  if (is_triangle(f.kind)) {
    merge(pr.p1, pr.p2);
    merge(pr.p1, pr.p3);
    cover(pr.p1);
    return;
  }
  int a = pr.p1 >= 0 ? pr.p1 : pr.p2;
  int b = pr.p3 >= 0 ? pr.p3 : pr.p2;
  merge(a, b);
}

ComponentPartition covered_components(const Painting& p) {
  check_inclusion(p);
  int q = p.q();
  ComponentPartition cp(q);
  // Every face of the full grid, so both swap images contribute.
  for (int k = 1; k < 6; ++k)
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        Face f{static_cast<FaceKind>(k), x, y};
        if (p.color(f) == Color::Green) cp.add_face(f);
      }
  return cp;
}

bool is_vertex(const GridFunction& fn) {
  int q = fn.q();
  int n = q - 1;
  if (n == 0) return true;
  std::vector<std::vector<std::int64_t>> rows;
  auto add = [&](std::initializer_list<std::pair<long, int>> terms) {
    std::vector<std::int64_t> r(n, 0);
    bool nz = false;
    for (auto [i, c] : terms) {
      int k = mod(i, q);
      if (k) {
        r[k - 1] += c;
      }
    }
    for (auto v : r) nz = nz || v != 0;
    if (nz) rows.push_back(std::move(r));
  };
  for (int x = 0; x < q; ++x) {
    int y = mod(fn.f_index() - x, q);
    if (x <= y) add({{x, 1}, {y, 1}});
  }
  for (int x = 1; x < q; ++x)
    for (int y = x; y < q; ++y)
      if (fn[x] + fn[y] == fn[x + y]) add({{x, 1}, {y, 1}, {x + y, -1}});
  return has_full_column_rank(rows, n);
}

ExtremeCertificate is_extreme(const GridFunction& fn) {
  ExtremeCertificate c;
  c.minimal = is_minimal(fn);
  c.vertex = c.minimal && is_vertex(fn);
  ComponentPartition cp = covered_components(painting_from_function(fn));
  c.uncovered = cp.uncovered();
  c.covered = c.uncovered.empty();
  c.components = cp.count();
  return c;
}

bool oversampling_vertex_test(const GridFunction& fn, int m) {
  if (m < 1) throw ArgumentError("oversampling factor must be positive");
  GridFunction g = restrict_to(interpolate(fn), m);
  return is_minimal(g) && is_vertex(g);
}

}  // namespace gj
