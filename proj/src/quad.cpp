#include "linsym/quad.hpp"

#include <cmath>

namespace linsym {

namespace {

long long merge_disc(const Quad& x, const Quad& y) {
    if (x.d == 0) return y.d;
    if (y.d == 0 || y.d == x.d) return x.d;
    throw std::runtime_error("Quad: mixed quadratic extensions " + std::to_string(x.d) +
                             " and " + std::to_string(y.d));
}

}  // namespace

double Quad::to_double() const {
    double v = linsym::to_double(a);
    if (b != 0) v += linsym::to_double(b) * std::sqrt(static_cast<double>(d));
    return v;
}

std::string Quad::str() const {
    if (b == 0) return rational_to_string(a);
    std::string s;
    if (a != 0) s = rational_to_string(a) + (b > 0 ? "+" : "");
    if (b == -1) s += "-";
    else if (b != 1) s += rational_to_string(b) + "*";
    s += "sqrt(" + std::to_string(d) + ")";
    return s;
}

Quad operator+(const Quad& x, const Quad& y) { return Quad(x.a + y.a, x.b + y.b, merge_disc(x, y)); }
Quad operator-(const Quad& x, const Quad& y) { return Quad(x.a - y.a, x.b - y.b, merge_disc(x, y)); }
Quad operator-(const Quad& x) { return Quad(-x.a, -x.b, x.d); }

Quad operator*(const Quad& x, const Quad& y) {
    long long d = merge_disc(x, y);
    return Quad(x.a * y.a + x.b * y.b * Rational(d), x.a * y.b + x.b * y.a, d);
}

Quad operator/(const Quad& x, const Quad& y) {
    if (y.is_zero()) throw std::runtime_error("Quad: division by zero");
    long long d = merge_disc(x, y);
    Rational n = y.a * y.a - y.b * y.b * Rational(d);
    if (n == 0) throw std::runtime_error("Quad: non-invertible element");  // impossible for squarefree d
    Quad conj(y.a, -y.b, y.d);
    Quad prod = x * conj;
    return Quad(prod.a / n, prod.b / n, d);
}

bool operator==(const Quad& x, const Quad& y) { return x.a == y.a && x.b == y.b; }

long long squarefree_part(Int n, Rational& square_out) {
    // n > 0 assumed small (discriminants in practice are tiny)
    Int sq = 1;
    for (Int p = 2; p * p <= n; ++p) {
        while (n % (p * p) == 0) {
            n /= p * p;
            sq *= p;
        }
    }
    square_out = Rational(sq);
    return n.convert_to<long long>();
}

std::optional<std::pair<Quad, Quad>> quad_sqrt(const Quad& v, long long& field_disc) {
    if (v.is_zero()) return std::make_pair(Quad(0), Quad(0));
    if (v.is_rational()) {
        Rational q = v.a;
        bool negative = q < 0;
        Rational mag = negative ? -q : q;
        Quad root;
        if (auto r = rational_sqrt(mag)) {
            root = Quad(*r);
        } else {
            // mag = s^2 * d0 with d0 squarefree; representable iff d0 matches the field
            Rational sq_n(1), sq_d(1);
            long long d_n = squarefree_part(num(mag), sq_n);
            long long d_d = squarefree_part(den(mag), sq_d);
            long long d0 = d_n * d_d;
            Rational s = sq_n / (sq_d * Rational(d_d));
            // mag = (s * sqrt(d0))^2 with s = sq_n/(sq_d*d_d) * ... verify below
            Quad cand(Rational(0), s, d0);
            if (!(cand * cand == Quad(mag))) return std::nullopt;
            if (field_disc == 0) field_disc = d0;
            if (field_disc != d0) return std::nullopt;
            root = cand;
        }
        if (negative) return std::make_pair(Quad(0), root);
        return std::make_pair(root, Quad(0));
    }
    // v = a + b*sqrt(d), look for (u + w*sqrt(d))^2 = v: u^2 + w^2 d = a, 2uw = b.
    // Then u^2 is a root of t^2 - a t + b^2 d/4 = 0.
    Rational A = v.a, B = v.b;
    Rational d(v.d);
    Rational disc = A * A - B * B * d;  // (u^2 - w^2 d)^2
    auto try_sign = [&](bool plus) -> std::optional<Quad> {
        auto s = rational_sqrt(disc);
        if (!s) return std::nullopt;
        Rational t = (A + (plus ? *s : -*s)) / 2;  // candidate u^2
        auto u = rational_sqrt(t);
        if (!u || *u == 0) return std::nullopt;
        Rational w = B / (2 * *u);
        Quad cand(*u, w, v.d);
        if (cand * cand == v) return cand;
        return std::nullopt;
    };
    if (disc >= 0) {
        if (auto c = try_sign(true)) return std::make_pair(*c, Quad(0));
        if (auto c = try_sign(false)) return std::make_pair(*c, Quad(0));
    }
    // purely imaginary root: sqrt(v) = i*sqrt(-v)
    Quad neg = -v;
    Rational nd = neg.a * neg.a - neg.b * neg.b * d;
    if (nd >= 0) {
        auto saved = field_disc;
        auto r = quad_sqrt(neg, field_disc);
        if (r && r->second.is_zero()) return std::make_pair(Quad(0), r->first);
        field_disc = saved;
    }
    return std::nullopt;
}

}  // namespace linsym
