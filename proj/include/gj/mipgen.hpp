#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gj/complex2d.hpp"
#include "gj/fraction.hpp"
#include "gj/groupfn.hpp"

namespace gj {

enum class CoverType { Standard, Fulldim, FulldimCovers };
enum class VarType { Continuous, Binary };
enum class RowSense { LE, GE, EQ };

const char* cover_type_name(CoverType t);
CoverType parse_cover_type(const std::string& s);

struct MipVariable {
  std::string name;
  VarType type = VarType::Continuous;
  std::optional<Fraction> lower = Fraction(0);  // nullopt is -infinity
  std::optional<Fraction> upper;                // nullopt is +infinity
  bool operator==(const MipVariable&) const = default;
};

using MipTerms = std::vector<std::pair<int, Fraction>>;

struct MipRow {
  std::string name;
  MipTerms terms;  // sorted by variable index, no zeros
  RowSense sense = RowSense::GE;
  Fraction rhs = 0;
};

class MipModel {
 public:
  int q = 0;
  int f_index = 0;
  int k = 0;
  int maxstep = 0;
  Fraction epsilon = 0;
  Fraction epsilon_prime = 0;
  bool maximize = true;

  int add_variable(const std::string& name, VarType type, std::optional<Fraction> lower,
                   std::optional<Fraction> upper);
  int add_binary(const std::string& name) { return add_variable(name, VarType::Binary, Fraction(0), Fraction(1)); }
  bool has(const std::string& name) const { return index_.count(name) > 0; }
  int index(const std::string& name) const;
  // Terms are (coefficient, variable name); duplicates are merged.
  void add_row(const std::string& name, const std::vector<std::pair<Fraction, std::string>>& terms,
               RowSense sense, const Fraction& rhs);
  void set_objective(const std::vector<std::pair<Fraction, std::string>>& terms, bool maximize);
  void fix(const std::string& name, const Fraction& value);

  const std::vector<MipVariable>& variables() const { return vars_; }
  MipVariable& variable(const std::string& name) { return vars_[index(name)]; }
  const std::vector<MipRow>& rows() const { return rows_; }
  const MipTerms& objective() const { return objective_; }
  // Rows whose name starts with the prefix.
  int count_rows(const std::string& prefix) const;
  int count_variables(const std::string& prefix) const;

 private:
  MipTerms resolve(const std::vector<std::pair<Fraction, std::string>>& terms) const;
  std::vector<MipVariable> vars_;
  std::unordered_map<std::string, int> index_;
  std::vector<MipRow> rows_;
  std::unordered_map<std::string, int> row_index_;
  MipTerms objective_;
};

// Same variables, rows and objective, compared by name.
bool equivalent(const MipModel& a, const MipModel& b);

// Canonical variable name of a face of the complex (x <= y half).
std::string face_variable(const Face& f, int q);

MipModel build_mip(int q, int f_index, int k, int maxstep, int m, CoverType type);
MipModel build_mip_2q(int q, int f_index, int a_index, int k, int maxstep, int m);

std::string mip_filename(int q, int f_index, int k, int maxstep, int m, CoverType type);
std::string mip_2q_filename(int q, int f_index, int a_index, int k, int maxstep, int m);

void write_lp(const MipModel& model, std::ostream& out);
MipModel read_lp(std::istream& in);
std::string emit_mip(int q, int f_index, int k, int maxstep, int m, CoverType type, const std::string& path);
std::string emit_mip_2q(int q, int f_index, int a_index, int k, int maxstep, int m, const std::string& path);

// Assignment of every model variable induced by an exact function with
// exactly k slopes.
std::map<std::string, Fraction> assignment_from_function(const GridFunction& fn, const MipModel& model);
// Names of violated rows, bounds and integrality conditions.
std::vector<std::string> check_assignment(const MipModel& model, const std::map<std::string, Fraction>& values);

struct SolutionFile {
  std::map<std::string, std::string> values;  // raw text per variable

  bool has(const std::string& name) const { return values.count(name) > 0; }
  const std::string& text(const std::string& name) const;
  Fraction exact(const std::string& name) const;
  // Rounds near-integers within 1e-6; ParseError otherwise.
  int binary(const std::string& name) const;
};

SolutionFile parse_solution(std::istream& in);
SolutionFile read_solution_file(const std::string& path);
// decimal_digits < 0 writes exact fractions.
void write_solution(const std::map<std::string, Fraction>& values, std::ostream& out, int decimal_digits = -1);

// Decimal text to the simplest rational within the printing tolerance;
// p/q text is taken exactly.  RationalizationError when the result has a
// denominator above max_den.
Fraction rationalize(const std::string& text, const Integer& max_den);
GridFunction refind_function(const SolutionFile& sol, int q, int f_index);

}  // namespace gj
