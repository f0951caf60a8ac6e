#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gj/complex2d.hpp"
#include "gj/linalg.hpp"
#include "gj/lp.hpp"
#include "gj/polytope.hpp"

namespace gj {

enum class SearchMode { VertexFilter, Heuristic, Combined };

struct SearchConfig {
  int q = 0;
  int f_index = 0;
  int target_slopes = 2;
  Fraction epsilon = Fraction(1, 4);
  SearchMode mode = SearchMode::Combined;
  int exp_dim_threshold = 11;
  int worker_count = 1;
  std::optional<std::size_t> max_results;  // first N in depth-first order
  int split_depth = 3;                     // subtrees below this depth go to workers
};

// 1/10^ceil(q/4).
Fraction exact_epsilon(int q);
void validate(const SearchConfig& c);

struct SearchStats {
  long nodes = 0;
  long infeasible = 0;
  long component_prunes = 0;
  long lp_solves = 0;
  long emitted = 0;
  void add(const SearchStats& o);
};

class SearchNode {
 public:
  // Root with constraints pi_0 = 0, pi_f = 1, symmetry and subadditivity.
  SearchNode(int q, int f_index, Fraction epsilon);

  const Painting& painting() const { return painting_; }
  const ComponentPartition& components() const { return components_; }
  int depth() const { return depth_; }
  int exp_dim() const { return q_ - cs_.rank(); }
  bool green_child() const { return green_child_; }
  LpState& lp() { return lp_; }
  int delta_var(int x, int y) const;  // -1 when Delta pi(x,y) is identically 0
  int pi_var(int x) const { return x; }

  // Feasibility check followed by implied-additivity detection.  Returns
  // false when the node is infeasible.
  bool propagate(SearchStats* stats = nullptr);
  std::optional<Face> choose_branching_triangle() const;
  // Green child first.  Children are not yet propagated.
  std::pair<SearchNode, SearchNode> branch(const Face& triangle) const;

  // The equality rows of cs_matrix over pi_0..pi_{q-1}.
  const EchelonBasis& cs_matrix() const { return cs_; }

 private:
  void paint_vertex_green(int x, int y);
  void absorb_inclusion();

  int q_, f_;
  Fraction eps_;
  Painting painting_;
  LpState lp_;
  std::vector<int> delta_;  // q*q, canonical x <= y
  ComponentPartition components_;
  EchelonBasis cs_;
  int depth_ = 0;
  bool green_child_ = false;
};

// Pi plus Delta pi = 0 at every Green vertex (White strictness dropped).
Polytope restricted_polytope(const Painting& p);
// Vertices of the restricted polytope that are extreme with >= k slopes.
std::vector<GridFunction> extreme_functions_of(const Painting& p, int k);

struct FoundFunction {
  GridFunction fn;
  int slopes = 0;
  int components = 0;
  int depth = 0;
  int exp_dim = 0;
};

std::vector<FoundFunction> vertex_filtering_search(const SearchConfig& c, SearchStats* stats = nullptr);
std::vector<Painting> heuristic_backtracking_search(const SearchConfig& c, SearchStats* stats = nullptr);
std::vector<FoundFunction> combined_search(const SearchConfig& c, SearchStats* stats = nullptr);
// Dispatch on c.mode; heuristic paintings are turned into functions.
std::vector<FoundFunction> run_search(const SearchConfig& c, SearchStats* stats = nullptr);

}  // namespace gj
