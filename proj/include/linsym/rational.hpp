#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace linsym {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

std::string rational_to_string(const Rational& q);

// Accepts "3", "-2/9", "0.5".
std::optional<Rational> parse_rational(const std::string& s);

// Continued-fraction reconstruction of a nearby rational with bounded denominator.
Rational rationalize(double v, long max_den = 4096);

// Exact q^k for integer k (throws on 0^negative).
Rational rational_pow(const Rational& q, long k);

// Exact square root if q is a perfect square of a rational.
std::optional<Rational> rational_sqrt(const Rational& q);

}  // namespace linsym
