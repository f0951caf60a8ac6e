#include "gj/fraction.hpp"

#include <cctype>

#include "gj/errors.hpp"

namespace gj {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_int(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw ParseError("not an integer: '" + std::string(s) + "'");
  Integer v(std::string(body), 10);
  return s[0] == '-' ? Integer(-v) : v;
}

Fraction parse_decimal(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    exp10 = parse_int(s.substr(epos + 1)).get_si();
    s = s.substr(0, epos);
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(s);
  } else {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    exp10 -= static_cast<long>(s.size() - dot - 1);
  }
  if (!all_digits(digits)) throw ParseError("not a number: '" + std::string(s) + "'");
  Fraction v{Integer(digits, 10)};
  if (exp10 > 0) v *= Fraction(pow10(static_cast<unsigned>(exp10)));
  if (exp10 < 0) v /= Fraction(pow10(static_cast<unsigned>(-exp10)));
  v.canonicalize();
  return neg ? Fraction(-v) : v;
}

}  // namespace

Fraction parse_fraction(std::string_view text, bool* was_reduced) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (was_reduced) *was_reduced = true;
  if (text.empty()) throw ParseError("empty number");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Fraction v(num, den);
  v.canonicalize();
  if (was_reduced && (v.get_num() != num || v.get_den() != den)) *was_reduced = false;
  return v;
}

std::string to_string(const Fraction& x) { return x.get_str(); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer pow10(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Walk the continued fractions of lo and hi together; the first place they
// differ decides the simplest fraction.
Fraction simplest_between(const Fraction& lo_in, const Fraction& hi_in) {
  Fraction lo = lo_in, hi = hi_in;
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return 0;
  bool neg = hi < 0;
  if (neg) {
    Fraction t = -lo;
    lo = -hi;
    hi = t;
  }
  // Convergent recurrence h_k = a_k h_{k-1} + h_{k-2}.
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Fraction x = lo, y = hi;
  while (true) {
    Integer fx, fy;
    mpz_fdiv_q(fx.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpz_fdiv_q(fy.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    Integer a;
    bool done = false;
    if (fx != fy || Fraction(fx) == x) {
      // an integer lies in [x, y]; take the smallest one, ceil(x)
      mpz_cdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      done = true;
    } else {
      a = fx;
    }
    Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (done) break;
    Fraction nx = 1 / (y - Fraction(a));
    Fraction ny = 1 / (x - Fraction(a));
    x = nx;
    y = ny;
  }
  Fraction r(h1, k1);
  r.canonicalize();
  return neg ? Fraction(-r) : r;
}

}  // namespace gj
