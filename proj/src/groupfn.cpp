#include "gj/groupfn.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gj/errors.hpp"

namespace gj {

GridFunction::GridFunction(int q, int f_index, Vector values)
    : q_(q), f_(f_index), values_(std::move(values)) {
  if (q < 1) throw ArgumentError("q must be positive");
  if (f_index < 0 || f_index >= q) throw ArgumentError("f_index out of range");
  if (static_cast<int>(values_.size()) != q) throw ArgumentError("expected q values");
}

bool GridFunction::operator<(const GridFunction& o) const {
  if (q_ != o.q_) return q_ < o.q_;
  if (f_ != o.f_) return f_ < o.f_;
  return std::lexicographical_compare(values_.begin(), values_.end(), o.values_.begin(),
                                      o.values_.end());
}

Fraction PiecewiseLinear::operator()(const Fraction& x) const {
  Fraction t = x * q;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  int i = mod(Integer(fl % q).get_si(), q);
  Fraction frac = t - Fraction(fl);
  return values[i] + frac * slopes[i] / q;
}

GridFunction gmic(int q, int f_index) {
  if (f_index < 1 || f_index >= q) throw ArgumentError("gmic: f_index must be in [1, q-1]");
  Vector v(q);
  for (int i = 0; i < q; ++i)
    v[i] = i <= f_index ? Fraction(i, f_index) : Fraction(q - i, q - f_index);
  for (auto& x : v) x.canonicalize();
  return GridFunction(q, f_index, std::move(v));
}

Fraction subadditivity_slack(const GridFunction& fn, int x, int y) {
  int q = fn.q();
  if (x < 0 || y < 0 || x >= q || y >= q) throw ArgumentError("subadditivity_slack: index out of range");
  return fn[x] + fn[y] - fn[x + y];
}

bool is_minimal(const GridFunction& fn) {
  int q = fn.q();
  if (fn[0] != 0) return false;
  for (int x = 0; x < q; ++x) {
    if (fn[x] + fn[fn.f_index() - x] != 1) return false;
    for (int y = x; y < q; ++y)
      if (fn[x] + fn[y] < fn[x + y]) return false;
  }
  return true;
}

PiecewiseLinear interpolate(const GridFunction& fn) {
  PiecewiseLinear pl;
  pl.q = fn.q();
  pl.f_index = fn.f_index();
  pl.values = fn.values();
  pl.slopes.resize(fn.q());
  for (int i = 0; i < fn.q(); ++i) pl.slopes[i] = (fn[i + 1] - fn[i]) * fn.q();
  return pl;
}

GridFunction restrict_to(const PiecewiseLinear& pl, int m) {
  if (m < 1) throw ArgumentError("restrict: m must be positive");
  // Breakpoints are i/q, so they always lie on (1/(mq))Z; only m is checked.
  int n = pl.q * m;
  Vector v(n);
  for (int j = 0; j < n; ++j) v[j] = pl(Fraction(j, n));
  for (auto& x : v) x.canonicalize();
  return GridFunction(n, pl.f_index * m, std::move(v));
}

Vector distinct_slopes(const GridFunction& fn) {
  Vector s;
  for (int i = 0; i < fn.q(); ++i) s.push_back((fn[i + 1] - fn[i]) * fn.q());
  std::sort(s.begin(), s.end(), std::greater<>());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

int number_of_slopes(const GridFunction& fn) { return static_cast<int>(distinct_slopes(fn).size()); }

Integer arithmetic_complexity(const GridFunction& fn) {
  Integer d = 1;
  for (auto& v : fn.values()) d = lcm(d, v.get_den());
  return d;
}

GridFunction automorphism(const GridFunction& fn, int a) {
  int q = fn.q();
  if (std::gcd(mod(a, q), q) != 1) throw ArgumentError("automorphism: a must be coprime to q");
  Vector v(q);
  for (int i = 0; i < q; ++i) v[i] = fn[static_cast<long>(a) * i];
  int inv = 1;
  while (mod(static_cast<long>(a) * inv, q) != 1 % q) ++inv;
  return GridFunction(q, mod(static_cast<long>(inv) * fn.f_index(), q), std::move(v));
}

bool values_in_lattice(const GridFunction& fn, const Integer& v) {
  for (auto& x : fn.values())
    if (!mpz_divisible_p(v.get_mpz_t(), x.get_den_mpz_t())) return false;
  return true;
}

bool increments_in_lattice(const GridFunction& fn, const Integer& v) {
  for (int i = 0; i < fn.q(); ++i) {
    Fraction d = fn[i + 1] - fn[i];
    if (!mpz_divisible_p(v.get_mpz_t(), d.get_den_mpz_t())) return false;
  }
  return true;
}

std::string to_json(const GridFunction& fn) {
  std::ostringstream out;
  out << "{\"q\": " << fn.q() << ", \"f\": \"" << to_string(fn.f()) << "\", \"values\": [";
  for (int i = 0; i < fn.q(); ++i) out << (i ? ", " : "") << '"' << to_string(fn[i]) << '"';
  out << "]}";
  return out.str();
}

GridFunction function_from_json(const std::string& text, std::ostream* warnings) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("function file: ") + e.what());
  }
  if (!doc.contains("q") || !doc.contains("f") || !doc.contains("values"))
    throw ParseError("function file: keys q, f and values are required");
  int q = doc["q"].get<int>();
  if (q < 1) throw ParseError("function file: q must be positive");
  auto rational = [&](const nlohmann::json& j, const char* what) {
    std::string s = j.is_string() ? j.get<std::string>() : j.dump();
    bool reduced = true;
    Fraction v = parse_fraction(s, &reduced);
    if (!reduced && warnings) *warnings << "warning: " << what << " '" << s << "' not in lowest terms\n";
    return v;
  };
  Fraction f = rational(doc["f"], "f");
  Fraction fq = f * q;
  if (fq.get_den() != 1 || fq < 0 || fq >= q) throw ParseError("function file: f is not in (1/q)Z ∩ [0,1)");
  const auto& vals = doc["values"];
  if (!vals.is_array() || static_cast<int>(vals.size()) != q)
    throw ParseError("function file: values must have length q");
  Vector v;
  for (auto& x : vals) v.push_back(rational(x, "value"));
  return GridFunction(q, static_cast<int>(fq.get_num().get_si()), std::move(v));
}

GridFunction read_function_file(const std::string& path, std::ostream* warnings) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return function_from_json(ss.str(), warnings);
}

void write_function_file(const GridFunction& fn, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << to_json(fn) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace gj
