#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace ttlab {

/// Exact rational scalar used for lengths, heights and twists in exact mode.
using Rational = mpq_class;

/// Parses "p", "p/q", or a finite decimal such as "-0.125" into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string format_rational(const Rational& value);

/// Twelve significant digits, the numeric-mode output convention.
std::string format_double(double value);

/// x mod m into [0, m) for m > 0.
Rational wrap(const Rational& x, const Rational& m);
double wrap(double x, double m);

/// p/q in lowest terms; mpq_class(p, q) alone does not reduce.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double r) { return r; }

Rational floor_div(const Rational& a, const Rational& b);

}  // namespace ttlab
