#include <fstream>
#include <sstream>

#include "gj/complex2d.hpp"
#include "gj/errors.hpp"

namespace gj {

namespace {

constexpr int kCell = 16;
constexpr int kMargin = 24;
constexpr int kBand = 8;
const char* const kGreen = "#006400";
const char* const kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a6cee3",
                                "#a65628", "#f781bf", "#999999", "#66c2a5", "#fc8d62", "#8da0cb"};

const char* fill_of(Color c) {
  switch (c) {
    case Color::Green: return kGreen;
    case Color::White: return "#ffffff";
    case Color::Grey: return "#d0d0d0";
  }
  return "#000000";
}

}  // namespace

std::string render_2d_diagram(const Painting& p) {
  int q = p.q();
  int side = q * kCell;
  int W = side + 2 * kMargin + kBand;
  std::ostringstream s;
  auto X = [&](int gx) { return kMargin + kBand + gx * kCell; };
  auto Y = [&](int gy) { return kMargin + (q - gy) * kCell; };
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << W
    << "\" viewBox=\"0 0 " << W << ' ' << W << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << W << "\" fill=\"#ffffff\"/>\n";
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      s << "<g class=\"cell\" data-x=\"" << x << "\" data-y=\"" << y << "\">";
      Color lo = p.color({FaceKind::LowerTriangle, x, y});
      Color up = p.color({FaceKind::UpperTriangle, x, y});
      s << "<polygon class=\"lower\" points=\"" << X(x) << ',' << Y(y) << ' ' << X(x + 1) << ',' << Y(y) << ' '
        << X(x) << ',' << Y(y + 1) << "\" fill=\"" << fill_of(lo) << "\"/>";
      s << "<polygon class=\"upper\" points=\"" << X(x) << ',' << Y(y + 1) << ' ' << X(x + 1) << ',' << Y(y + 1)
        << ' ' << X(x + 1) << ',' << Y(y) << "\" fill=\"" << fill_of(up) << "\"/>";
      s << "</g>\n";
    }
  // Green edges.
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (FaceKind k : {FaceKind::HEdge, FaceKind::VEdge, FaceKind::DEdge}) {
        Face f{k, x, y};
        if (p.color(f) != Color::Green) continue;
        int x1 = x, y1 = y, x2 = x, y2 = y;
        if (k == FaceKind::HEdge) x2 = x + 1;
        if (k == FaceKind::VEdge) y2 = y + 1;
        if (k == FaceKind::DEdge) {
          y1 = y + 1;
          x2 = x + 1;
        }
        s << "<line class=\"edge\" x1=\"" << X(x1) << "\" y1=\"" << Y(y1) << "\" x2=\"" << X(x2) << "\" y2=\""
          << Y(y2) << "\" stroke=\"" << kGreen << "\" stroke-width=\"2\"/>\n";
      }
  // Grid lines.
  for (int i = 0; i <= q; ++i) {
    s << "<line class=\"grid\" x1=\"" << X(i) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(i) << "\" y2=\"" << Y(q)
      << "\" stroke=\"#808080\" stroke-width=\"0.5\"/>\n";
    s << "<line class=\"grid\" x1=\"" << X(0) << "\" y1=\"" << Y(i) << "\" x2=\"" << X(q) << "\" y2=\"" << Y(i)
      << "\" stroke=\"#808080\" stroke-width=\"0.5\"/>\n";
  }
  // Diagonals x + y = f and x + y = 1 + f, clipped to the unit square.
  int f = p.f_index();
  for (int c : {f, q + f}) {
    int xa = std::max(0, c - q), xb = std::min(q, c);
    if (xa >= xb) continue;
    s << "<line class=\"diagonal\" x1=\"" << X(xa) << "\" y1=\"" << Y(c - xa) << "\" x2=\"" << X(xb) << "\" y2=\""
      << Y(c - xb) << "\" stroke=\"#000000\" stroke-width=\"1.5\" stroke-dasharray=\"4,3\"/>\n";
  }
  // Component bands along both axes.
  ComponentPartition cp(q);
  for (int k = 1; k < 6; ++k)
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        Face fc{static_cast<FaceKind>(k), x, y};
        if (p.color(fc) == Color::Green) cp.add_face(fc);
      }
  auto groups = cp.groups();
  std::vector<int> ordinal(q);
  for (size_t g = 0; g < groups.size(); ++g)
    for (int z : groups[g]) ordinal[z] = static_cast<int>(g);
  for (int z = 0; z < q; ++z) {
    const char* col = kPalette[ordinal[z] % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const char* op = cp.covered(z) ? "1" : "0.35";
    s << "<rect class=\"component\" data-z=\"" << z << "\" x=\"" << X(z) << "\" y=\"" << Y(0) + 2 << "\" width=\""
      << kCell << "\" height=\"" << kBand << "\" fill=\"" << col << "\" fill-opacity=\"" << op << "\"/>\n";
    s << "<rect class=\"component\" data-z=\"" << z << "\" x=\"" << X(0) - kBand - 2 << "\" y=\"" << Y(z + 1)
      << "\" width=\"" << kBand << "\" height=\"" << kCell << "\" fill=\"" << col << "\" fill-opacity=\"" << op
      << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_2d_diagram(const GridFunction& fn) { return render_2d_diagram(painting_from_function(fn)); }

void write_svg(const std::string& svg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << svg;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace gj
