#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gj/fraction.hpp"

namespace gj {

using LinearExpr = std::vector<std::pair<int, Fraction>>;  // (variable, coefficient)

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class Sense { Maximize, Minimize };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Fraction value;  // objective value when Optimal
  Vector point;    // values of the structural variables
};

// Exact bounded-variable simplex in dictionary form.  Every row
// r = a . x introduces a basic variable with its own bounds, so bound
// changes on structural or row variables never alter the matrix.  The
// basis and assignment survive between solves:
//   * after bound changes, solve() repairs feasibility from the stored
//     basis (bound-repair pivots, dual-simplex style);
//   * after an objective change, the primal phase starts from it.
// Dantzig pricing with a switch to Bland's rule on degenerate pivots.
class LpState {
 public:
  int add_variable(std::optional<Fraction> lo, std::optional<Fraction> hi, std::string name = {});
  // Row over existing (structural or row) variables.
  int add_row(const LinearExpr& expr, std::optional<Fraction> lo, std::optional<Fraction> hi,
              std::string name = {});
  void set_bounds(int var, std::optional<Fraction> lo, std::optional<Fraction> hi);
  void set_lower(int var, std::optional<Fraction> lo);
  void set_upper(int var, std::optional<Fraction> hi);
  const std::optional<Fraction>& lower(int var) const { return vars_[var].lo; }
  const std::optional<Fraction>& upper(int var) const { return vars_[var].hi; }

  // Feasibility check from the stored basis.
  bool feasible();
  // objective over any variables; an empty objective is a feasibility check.
  LpResult solve(const LinearExpr& objective, Sense sense);
  // Maximize until the objective exceeds `threshold` (returns early) or is
  // proven to be at most `threshold`.  Returns nullopt when infeasible.
  std::optional<bool> exceeds(const LinearExpr& objective, const Fraction& threshold);

  const Fraction& value(int var) const { return vars_[var].value; }
  Vector structural_point() const;
  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_structural() const { return num_structural_; }
  const std::string& name(int var) const { return vars_[var].name; }
  long pivot_count() const { return pivots_; }

 private:
  struct Var {
    std::optional<Fraction> lo, hi;
    Fraction value;
    int row = -1;  // tableau row when basic
    int col = -1;  // tableau column when nonbasic
    std::string name;
  };

  bool below(int v) const { return vars_[v].lo && vars_[v].value < *vars_[v].lo; }
  bool above(int v) const { return vars_[v].hi && vars_[v].value > *vars_[v].hi; }
  bool can_increase(int v) const { return !vars_[v].hi || vars_[v].value < *vars_[v].hi; }
  bool can_decrease(int v) const { return !vars_[v].lo || vars_[v].value > *vars_[v].lo; }
  void update_nonbasic(int v, const Fraction& target);
  void pivot_and_update(int basic, int nonbasic, const Fraction& target);
  void pivot(int basic, int nonbasic);
  Vector objective_row(const LinearExpr& objective, Fraction& constant) const;
  LpStatus optimize(const LinearExpr& objective, const Fraction* stop_above);

  std::vector<Var> vars_;
  std::vector<std::vector<Fraction>> rows_;  // rows_[r][c]: coefficient of column c's variable
  std::vector<int> row_var_;                 // basic variable of each row
  std::vector<int> col_var_;                 // nonbasic variable of each column
  int num_structural_ = 0;
  std::vector<int> structural_;
  long pivots_ = 0;
};

}  // namespace gj
