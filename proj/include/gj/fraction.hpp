#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace gj {

using Fraction = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q", "-p/q" and decimals like "0.25" or "-1.5e-3".
// Sets *was_reduced to false when a p/q input was not in lowest terms.
Fraction parse_fraction(std::string_view text, bool* was_reduced = nullptr);

std::string to_string(const Fraction& x);

Integer lcm(const Integer& a, const Integer& b);

// 10^e as an exact integer.
Integer pow10(unsigned e);

// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Fraction simplest_between(const Fraction& lo, const Fraction& hi);

using Vector = std::vector<Fraction>;
using Matrix = std::vector<Vector>;

}  // namespace gj
