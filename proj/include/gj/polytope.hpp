#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "gj/fraction.hpp"
#include "gj/groupfn.hpp"

namespace gj {

enum class Relation { EQ, GEQ };

// coefficients . x  (= or >=)  rhs
struct LinearConstraint {
  Vector coefficients;
  Fraction rhs;
  Relation relation = Relation::GEQ;

  bool operator==(const LinearConstraint&) const = default;
};

struct Polytope {
  int dimension_ambient = 0;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;
  std::optional<std::vector<Vector>> vertices;

  // Inequalities plus two per equality, as counted by H-representation
  // tools that have no linearity section.
  int raw_inequality_count() const {
    return static_cast<int>(inequalities.size() + 2 * equalities.size());
  }
  int constraint_count() const { return static_cast<int>(inequalities.size() + equalities.size()); }
  bool contains(const Vector& x) const;
};

// Pi_f(1/qZ/Z) over pi_1..pi_{q-1}; pi_0 is eliminated as 0.
Polytope build_minimal_function_polytope(int q, int f_index);
// Same point set from pi_i + pi_j + pi_k >= 1 over i+j+k = f (mod q).
Polytope build_triple_system_polytope(int q, int f_index);
GridFunction function_from_vertex(int q, int f_index, const Vector& vertex);

Polytope remove_redundant(const Polytope& p);

// Explicit and implicit equalities; n minus their rank is the dimension.
int affine_dimension(const Polytope& p);
// Rank of the explicit equality rows only (cheap upper bound on dimension).
int explicit_dimension(const Polytope& p);

struct EnumerateOptions {
  bool auto_redund = true;  // remove redundancy first when dimension >= 8
  int redund_min_dimension = 8;
};

std::vector<Vector> enumerate_vertices(const Polytope& p, const EnumerateOptions& opt = {});

// lrs-style text formats.
void write_h_representation(const Polytope& p, std::ostream& out, const std::string& name = "polytope");
Polytope read_h_representation(std::istream& in);
void write_v_representation(const std::vector<Vector>& vertices, int dim, std::ostream& out,
                            const std::string& name = "polytope");
std::vector<Vector> read_v_representation(std::istream& in);

}  // namespace gj
