#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace ultracat {

// All distances, radii and heights are exact rationals.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat(std::int64_t num, std::int64_t den = 1) {
  return Rat(BigInt(num), BigInt(den));
}

inline std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Rational extended with a single +infinity, used for isolation radii of
// one-point spaces and for unbounded radius declarations.
struct ExtRat {
  bool inf = false;
  Rat v;

  ExtRat() = default;
  ExtRat(const Rat& r) : inf(false), v(r) {}  // implicit on purpose
  static ExtRat infinity() {
    ExtRat e;
    e.inf = true;
    return e;
  }
  bool is_inf() const { return inf; }
  const Rat& finite() const { return v; }
};

inline bool operator==(const ExtRat& a, const ExtRat& b) {
  if (a.inf || b.inf) return a.inf == b.inf;
  return a.v == b.v;
}
inline bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
inline bool operator<(const ExtRat& a, const ExtRat& b) {
  if (a.inf) return false;
  if (b.inf) return true;
  return a.v < b.v;
}
inline bool operator<=(const ExtRat& a, const ExtRat& b) { return a == b || a < b; }
inline bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
inline bool operator>=(const ExtRat& a, const ExtRat& b) { return b <= a; }
inline bool operator<(const Rat& a, const ExtRat& b) { return ExtRat(a) < b; }
inline bool operator<(const ExtRat& a, const Rat& b) { return a < ExtRat(b); }

inline std::string ext_str(const ExtRat& e) { return e.inf ? "inf" : rat_str(e.v); }

}  // namespace ultracat
