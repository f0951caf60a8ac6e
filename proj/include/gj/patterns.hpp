#pragma once

#include <vector>

#include "gj/complex2d.hpp"
#include "gj/fraction.hpp"
#include "gj/groupfn.hpp"
#include "gj/polytope.hpp"

namespace gj {

// Pattern family with q = 36r + 22 and f = 1/2, parametrized by the
// component slopes s_0..s_{r+1}.
int pattern_q(int r);

Painting build_prescribed_painting(int r);

// Row i holds the coefficients of pi_i over s_0..s_{r+1}.
std::vector<std::vector<long>> pattern_linear_forms(int r);
// Coefficients of the normalization N(s) = pi_{q/2}, which must equal 1.
std::vector<long> pattern_normalization(int r);

GridFunction pi_from_slopes(int r, const Vector& s);
Vector slopes_from_pi(int r, const GridFunction& fn);

// Extra additive vertices imposed for large r.
std::vector<std::pair<int, int>> pattern_extra_additivities(int r);

// Variables s_0..s_{r+1}.  With extra = true the extra additive vertices
// become equalities.
Polytope build_slope_polytope(int r, bool extra = false);

// Extreme functions among the vertices of the slope polytope with at
// least k_slopes slopes, sorted.  Extra additivities are used for r >= 16.
std::vector<GridFunction> pattern_extreme(int r, int k_slopes);

}  // namespace gj
