#pragma once

#include <array>
#include <string>
#include <vector>

#include "gj/groupfn.hpp"

namespace gj {

enum class FaceKind { Vertex, HEdge, VEdge, DEdge, LowerTriangle, UpperTriangle };
enum class Color : unsigned char { Grey, Green, White };

struct Face {
  FaceKind kind = FaceKind::Vertex;
  int x = 0;
  int y = 0;
  auto operator<=>(const Face&) const = default;
};

const char* kind_name(FaceKind k);
const char* color_name(Color c);

// Representative in the x <= y half under the swap (x,y) -> (y,x).
Face canonical(Face f, int q);
std::vector<std::pair<int, int>> corners(const Face& f, int q);
bool is_triangle(FaceKind k);
bool is_edge(FaceKind k);

// Interval projections; -1 marks a projection that is a point.
struct Projections {
  int p1 = -1, p2 = -1, p3 = -1;
};
Projections projections(const Face& f, int q);

class Painting {
 public:
  Painting() = default;
  Painting(int q, int f_index);

  int q() const { return q_; }
  int f_index() const { return f_; }
  Color color(Face f) const;
  void set(Face f, Color c);
  // All canonical faces of one kind.
  std::vector<Face> faces(FaceKind k) const;
  std::vector<Face> all_faces() const;

  bool operator==(const Painting&) const = default;

 private:
  int index(const Face& canon) const { return (static_cast<int>(canon.kind) * q_ + canon.x) * q_ + canon.y; }
  int q_ = 0;
  int f_ = 0;
  std::vector<Color> colors_;
};

Painting painting_from_function(const GridFunction& fn);
// Vertices on x = 0 and x + y = f are Green; faces whose corners are all
// Green become Green; everything else is Grey.
Painting initial_painting(int q, int f_index);
// Green for every Grey face whose corners are all Green; returns the
// faces that changed.
std::vector<Face> apply_inclusion(Painting& p);
// Throws InvariantError when a Green face has a non-Green corner.
void check_inclusion(const Painting& p);

std::string dump_painting(const Painting& p);
Painting parse_painting(const std::string& text, int q, int f_index);

class ComponentPartition {
 public:
  ComponentPartition() = default;
  explicit ComponentPartition(int q);

  int find(int z) const;
  // Returns true if two distinct sets were merged.
  bool merge(int a, int b);
  void cover(int z);
  bool covered(int z) const { return covered_[find(z)]; }
  int size() const { return static_cast<int>(parent_.size()); }
  int count() const { return count_; }
  bool all_covered() const;
  std::vector<int> uncovered() const;
  // Sets ordered by their smallest member.
  std::vector<std::vector<int>> groups() const;
  // Merge and cover according to one Green face.
  void add_face(const Face& f);

  bool same_partition(const ComponentPartition& o) const;

 private:
  mutable std::vector<int> parent_;
  std::vector<char> covered_;
  int count_ = 0;
};

ComponentPartition covered_components(const Painting& p);

struct ExtremeCertificate {
  bool minimal = false;
  bool vertex = false;
  bool covered = false;
  std::vector<int> uncovered;
  int components = 0;
  bool extreme() const { return minimal && vertex && covered; }
};

// Rank test (b): {pi_0 = 0, symmetry, tight Delta pi rows} has rank q-1.
bool is_vertex(const GridFunction& fn);
ExtremeCertificate is_extreme(const GridFunction& fn);
bool oversampling_vertex_test(const GridFunction& fn, int m);

std::string render_2d_diagram(const Painting& p);
std::string render_2d_diagram(const GridFunction& fn);
void write_svg(const std::string& svg, const std::string& path);

}  // namespace gj
