#include "linsym/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace linsym {

std::string rational_to_string(const Rational& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Int n(s.substr(0, slash));
            Int d(s.substr(slash + 1));
            if (d == 0) return std::nullopt;
            return Rational(n, d);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
            bool neg = !head.empty() && head[0] == '-';
            if (head == "-" || head.empty()) head = neg ? "-0" : "0";
            Int ip(head);
            Int scale = 1;
            Int frac = tail.empty() ? Int(0) : Int(tail);
            for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
            Rational r = Rational(ip) + (neg ? -1 : 1) * Rational(frac, scale);
            return r;
        }
        return Rational(Int(s));
    } catch (...) {
        return std::nullopt;
    }
}

Rational rationalize(double v, long max_den) {
    if (!std::isfinite(v)) throw std::runtime_error("rationalize: non-finite value");
    bool neg = v < 0;
    double x = std::fabs(v);
    // continued fraction convergents
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 9e17) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-13) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1, q1);
    return neg ? -r : r;
}

Rational rational_pow(const Rational& q, long k) {
    if (k == 0) return Rational(1);
    if (q == 0 && k < 0) throw std::runtime_error("rational_pow: 0^negative");
    Rational base = k < 0 ? Rational(1) / q : q;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    Rational acc(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    Int n = boost::multiprecision::sqrt(num(q));
    Int d = boost::multiprecision::sqrt(den(q));
    if (n * n == num(q) && d * d == den(q)) return Rational(n, d);
    return std::nullopt;
}

}  // namespace linsym
