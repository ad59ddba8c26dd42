#pragma once

#include "linsym/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace linsym {

// Element a + b*sqrt(d) of Q or of a single real quadratic extension Q(sqrt(d)).
// d == 0 marks a plain rational (b must then be 0). d > 1, squarefree, by convention.
struct Quad {
    Rational a{0};
    Rational b{0};
    long long d{0};

    Quad() = default;
    Quad(Rational r) : a(std::move(r)) {}
    Quad(long v) : a(v) {}
    Quad(int v) : a(v) {}
    Quad(Rational ra, Rational rb, long long dd) : a(std::move(ra)), b(std::move(rb)), d(dd) {
        if (b == 0) d = 0;
    }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    double to_double() const;
    std::string str() const;
};

Quad operator+(const Quad& x, const Quad& y);
Quad operator-(const Quad& x, const Quad& y);
Quad operator-(const Quad& x);
Quad operator*(const Quad& x, const Quad& y);
Quad operator/(const Quad& x, const Quad& y);
bool operator==(const Quad& x, const Quad& y);
inline bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }

inline Quad& operator+=(Quad& x, const Quad& y) { return x = x + y; }
inline Quad& operator-=(Quad& x, const Quad& y) { return x = x - y; }
inline Quad& operator*=(Quad& x, const Quad& y) { return x = x * y; }

long long squarefree_part(Int n, Rational& square_out);

// Exact square root of v inside Q(sqrt(field_disc)), allowing the extension to be
// introduced when field_disc == 0. Returns (re, im) with sqrt(v) = re + i*im; exactly
// one of the two parts is nonzero unless v == 0. Nullopt when the root does not lie
// in the (possibly newly extended) field.
std::optional<std::pair<Quad, Quad>> quad_sqrt(const Quad& v, long long& field_disc);

}  // namespace linsym
