#include "gj/lp.hpp"

#include "gj/errors.hpp"

namespace gj {

int LpState::add_variable(std::optional<Fraction> lo, std::optional<Fraction> hi, std::string name) {
  Var v;
  v.lo = std::move(lo);
  v.hi = std::move(hi);
  if (v.lo && v.hi && *v.lo > *v.hi) {
    // keep it; feasible() will report infeasibility
  }
  v.value = v.lo ? *v.lo : (v.hi ? *v.hi : Fraction(0));
  v.col = static_cast<int>(col_var_.size());
  v.name = std::move(name);
  int id = static_cast<int>(vars_.size());
  vars_.push_back(std::move(v));
  col_var_.push_back(id);
  for (auto& r : rows_) r.emplace_back(0);
  ++num_structural_;
  structural_.push_back(id);
  return id;
}

int LpState::add_row(const LinearExpr& expr, std::optional<Fraction> lo, std::optional<Fraction> hi,
                     std::string name) {
  std::vector<Fraction> row(col_var_.size());
  Fraction val = 0;
  for (auto& [var, coef] : expr) {
    if (coef == 0) continue;
    const Var& v = vars_.at(var);
    if (v.row >= 0) {
      const auto& src = rows_[v.row];
      for (size_t c = 0; c < row.size(); ++c)
        if (src[c] != 0) row[c] += coef * src[c];
    } else {
      row[v.col] += coef;
    }
    val += coef * v.value;
  }
  Var v;
  v.lo = std::move(lo);
  v.hi = std::move(hi);
  v.value = val;
  v.row = static_cast<int>(rows_.size());
  v.name = std::move(name);
  int id = static_cast<int>(vars_.size());
  vars_.push_back(std::move(v));
  rows_.push_back(std::move(row));
  row_var_.push_back(id);
  return id;
}

void LpState::set_bounds(int var, std::optional<Fraction> lo, std::optional<Fraction> hi) {
  vars_.at(var).lo = std::move(lo);
  vars_[var].hi = std::move(hi);
  if (vars_[var].col >= 0) {
    if (below(var)) update_nonbasic(var, *vars_[var].lo);
    else if (above(var)) update_nonbasic(var, *vars_[var].hi);
  }
}

void LpState::set_lower(int var, std::optional<Fraction> lo) { set_bounds(var, std::move(lo), vars_.at(var).hi); }
void LpState::set_upper(int var, std::optional<Fraction> hi) { set_bounds(var, vars_.at(var).lo, std::move(hi)); }

void LpState::update_nonbasic(int v, const Fraction& target) {
  Fraction delta = target - vars_[v].value;
  if (delta == 0) return;
  int c = vars_[v].col;
  for (size_t r = 0; r < rows_.size(); ++r)
    if (rows_[r][c] != 0) vars_[row_var_[r]].value += rows_[r][c] * delta;
  vars_[v].value = target;
}

void LpState::pivot_and_update(int basic, int nonbasic, const Fraction& target) {
  int r = vars_[basic].row, c = vars_[nonbasic].col;
  Fraction theta = (target - vars_[basic].value) / rows_[r][c];
  vars_[basic].value = target;
  vars_[nonbasic].value += theta;
  for (size_t k = 0; k < rows_.size(); ++k)
    if (static_cast<int>(k) != r && rows_[k][c] != 0) vars_[row_var_[k]].value += rows_[k][c] * theta;
  pivot(basic, nonbasic);
}

void LpState::pivot(int basic, int nonbasic) {
  ++pivots_;
  int r = vars_[basic].row, c = vars_[nonbasic].col;
  auto& pr = rows_[r];
  Fraction inv = 1 / pr[c];
  // nonbasic = (basic - sum_{k != c} pr[k] x_k) / pr[c]
  for (size_t k = 0; k < pr.size(); ++k) {
    if (static_cast<int>(k) == c) pr[k] = inv;
    else if (pr[k] != 0) pr[k] = -pr[k] * inv;
  }
  std::vector<size_t> nz;
  for (size_t k = 0; k < pr.size(); ++k)
    if (pr[k] != 0) nz.push_back(k);
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (static_cast<int>(i) == r) continue;
    auto& row = rows_[i];
    if (row[c] == 0) continue;
    Fraction m = row[c];
    row[c] = 0;
    for (size_t k : nz) row[k] += m * pr[k];
  }
  vars_[nonbasic].row = r;
  vars_[nonbasic].col = -1;
  vars_[basic].col = c;
  vars_[basic].row = -1;
  row_var_[r] = nonbasic;
  col_var_[c] = basic;
}

bool LpState::feasible() {
  for (auto& v : vars_)
    if (v.lo && v.hi && *v.lo > *v.hi) return false;
  while (true) {
    // Bland: smallest-index violated basic variable, smallest-index repair.
    int b = -1;
    for (int v = 0; v < num_vars(); ++v)
      if (vars_[v].row >= 0 && (below(v) || above(v))) {
        b = v;
        break;
      }
    if (b < 0) return true;
    const auto& row = rows_[vars_[b].row];
    bool raise = below(b);
    int pick = -1;
    for (int v = 0; v < num_vars(); ++v) {
      if (vars_[v].col < 0) continue;
      const Fraction& a = row[vars_[v].col];
      if (a == 0) continue;
      bool ok = raise ? ((a > 0 && can_increase(v)) || (a < 0 && can_decrease(v)))
                      : ((a < 0 && can_increase(v)) || (a > 0 && can_decrease(v)));
      if (ok) {
        pick = v;
        break;
      }
    }
    if (pick < 0) return false;
    pivot_and_update(b, pick, raise ? *vars_[b].lo : *vars_[b].hi);
  }
}

Vector LpState::objective_row(const LinearExpr& objective, Fraction& constant) const {
  Vector d(col_var_.size());
  constant = 0;
  for (auto& [var, coef] : objective) {
    const Var& v = vars_[var];
    if (v.row >= 0) {
      const auto& src = rows_[v.row];
      for (size_t c = 0; c < d.size(); ++c)
        if (src[c] != 0) d[c] += coef * src[c];
    } else {
      d[v.col] += coef;
    }
  }
  return d;
}

LpStatus LpState::optimize(const LinearExpr& objective, const Fraction* stop_above) {
  int degenerate = 0;
  while (true) {
    Fraction k0;
    Vector d = objective_row(objective, k0);
    if (stop_above) {
      Fraction cur = 0;
      for (auto& [var, coef] : objective) cur += coef * vars_[var].value;
      if (cur > *stop_above) return LpStatus::Optimal;
    }
    bool bland = degenerate > 8;
    int enter = -1;
    Fraction best = 0;
    for (size_t c = 0; c < d.size(); ++c) {
      if (d[c] == 0) continue;
      int v = col_var_[c];
      bool ok = d[c] > 0 ? can_increase(v) : can_decrease(v);
      if (!ok) continue;
      if (bland) {
        if (enter < 0 || v < enter) enter = v;
      } else if (enter < 0 || abs(d[c]) > best) {
        enter = v;
        best = abs(d[c]);
      }
    }
    if (enter < 0) return LpStatus::Optimal;
    int c = vars_[enter].col;
    int dir = d[c] > 0 ? 1 : -1;
    // Ratio test.
    std::optional<Fraction> step;
    int leave = -1;
    if (dir > 0 && vars_[enter].hi) step = *vars_[enter].hi - vars_[enter].value;
    if (dir < 0 && vars_[enter].lo) step = vars_[enter].value - *vars_[enter].lo;
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Fraction& a0 = rows_[r][c];
      if (a0 == 0) continue;
      int b = row_var_[r];
      Fraction a = dir > 0 ? a0 : Fraction(-a0);
      std::optional<Fraction> t;
      if (a > 0 && vars_[b].hi) t = (*vars_[b].hi - vars_[b].value) / a;
      if (a < 0 && vars_[b].lo) t = (*vars_[b].lo - vars_[b].value) / a;
      if (!t) continue;
      if (!step || *t < *step || (*t == *step && leave >= 0 && b < leave)) {
        step = t;
        leave = b;
      }
    }
    if (!step) return LpStatus::Unbounded;
    if (*step == 0) ++degenerate;
    else degenerate = 0;
    if (leave < 0) {
      update_nonbasic(enter, dir > 0 ? *vars_[enter].hi : *vars_[enter].lo);
    } else {
      Fraction target = (rows_[vars_[leave].row][c] * dir > 0) ? *vars_[leave].hi : *vars_[leave].lo;
      pivot_and_update(leave, enter, target);
    }
  }
}

LpResult LpState::solve(const LinearExpr& objective, Sense sense) {
  LpResult res;
  if (!feasible()) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  LinearExpr obj = objective;
  if (sense == Sense::Minimize)
    for (auto& t : obj) t.second = -t.second;
  res.status = obj.empty() ? LpStatus::Optimal : optimize(obj, nullptr);
  res.value = 0;
  for (auto& [var, coef] : objective) res.value += coef * vars_[var].value;
  res.point = structural_point();
  return res;
}

std::optional<bool> LpState::exceeds(const LinearExpr& objective, const Fraction& threshold) {
  if (!feasible()) return std::nullopt;
  LpStatus st = optimize(objective, &threshold);
  if (st == LpStatus::Unbounded) return true;
  Fraction cur = 0;
  for (auto& [var, coef] : objective) cur += coef * vars_[var].value;
  return cur > threshold;
}

Vector LpState::structural_point() const {
  Vector p;
  for (int v : structural_) p.push_back(vars_[v].value);
  return p;
}

}  // namespace gj
