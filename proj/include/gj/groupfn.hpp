#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gj/fraction.hpp"

namespace gj {

inline int mod(long a, int q) {
  long r = a % q;
  return static_cast<int>(r < 0 ? r + q : r);
}

// A function on (1/q)Z/Z given by its values at i/q.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(int q, int f_index, Vector values);

  int q() const { return q_; }
  int f_index() const { return f_; }
  Fraction f() const { return Fraction(f_, q_); }
  const Vector& values() const { return values_; }
  const Fraction& operator[](long i) const { return values_[mod(i, q_)]; }

  bool operator==(const GridFunction& o) const {
    return q_ == o.q_ && f_ == o.f_ && values_ == o.values_;
  }
  bool operator<(const GridFunction& o) const;

 private:
  int q_ = 0;
  int f_ = 0;
  Vector values_;
};

// Continuous interpolation of a grid function.  Breakpoints are at
// i/q; slopes[i] is the slope on [i/q, (i+1)/q].
struct PiecewiseLinear {
  int q = 0;
  int f_index = 0;
  Vector values;  // values at breakpoints 0..q-1, periodic
  Vector slopes;

  Fraction operator()(const Fraction& x) const;
};

GridFunction gmic(int q, int f_index);

Fraction subadditivity_slack(const GridFunction& fn, int x, int y);
bool is_minimal(const GridFunction& fn);
PiecewiseLinear interpolate(const GridFunction& fn);
GridFunction restrict_to(const PiecewiseLinear& pl, int m);
int number_of_slopes(const GridFunction& fn);
Vector distinct_slopes(const GridFunction& fn);  // sorted descending
Integer arithmetic_complexity(const GridFunction& fn);
GridFunction automorphism(const GridFunction& fn, int a);

// True when every values[i] lies in (1/v)Z.
bool values_in_lattice(const GridFunction& fn, const Integer& v);
bool increments_in_lattice(const GridFunction& fn, const Integer& v);

// Function file: {"q": .., "f": "p/q", "values": [..]}.
std::string to_json(const GridFunction& fn);
GridFunction function_from_json(const std::string& text, std::ostream* warnings = nullptr);
GridFunction read_function_file(const std::string& path, std::ostream* warnings = nullptr);
void write_function_file(const GridFunction& fn, const std::string& path);

}  // namespace gj
