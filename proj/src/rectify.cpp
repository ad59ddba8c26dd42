#include "linsym/rectify.hpp"

#include <cmath>

namespace linsym {

namespace {

Expr qe(const Rational& r) { return Expr::num(r); }

Expr quad_expr(const Quad& q) {
    Expr e = qe(q.a);
    if (q.b != 0)
        e = e + qe(q.b) * Expr::pow(Expr::num(q.d), qe(Rational(1, 2)));
    return normalize(e);
}

VectorField combine(const std::vector<VectorField>& fields, const QVec& u) {
    Expr xi = Expr::num(0), eta = Expr::num(0);
    for (size_t i = 0; i < fields.size(); ++i) {
        Expr c = quad_expr(u[i]);
        xi = xi + c * fields[i].xi;
        eta = eta + c * fields[i].eta;
    }
    return {normalize(xi), normalize(eta)};
}

// u = a*var + b with a, b free of var; nullopt unless exactly linear.
std::optional<std::pair<Expr, Expr>> linear_in(const Expr& u, const std::string& var) {
    Expr a = normalize(differentiate(u, var));
    if (depends_on(a, var) || a.is_zero_literal()) return std::nullopt;
    Expr b = normalize(u - a * Expr::sym(var));
    if (depends_on(b, var)) return std::nullopt;
    return std::make_pair(a, b);
}

// closed form of integral t^n * exp(a t + b) dt by repeated parts
Expr poly_exp_integral(long n, const Expr& a, const Expr& arg, const std::string& var) {
    Expr t = Expr::sym(var);
    Expr sum = Expr::num(0);
    Rational falling(1);
    Expr apow = a;
    for (long i = 0; i <= n; ++i) {
        Expr term = qe(falling) * Expr::pow(t, Expr::num(n - i)) / apow;
        sum = sum + (i % 2 == 0 ? term : Expr::num(0) - term);
        falling *= Rational(n - i);
        apow = apow * a;
    }
    return Expr::fn(FnKind::Exp, arg) * sum;
}

// antiderivative of a single var-dependent factor
std::optional<Expr> integrate_factor(const Expr& f, const std::string& var) {
    Expr t = Expr::sym(var);
    if (f == t) return Expr::pow(t, Expr::num(2)) / Expr::num(2);
    if (f.kind() == NodeKind::Pow) {
        const Expr& base = f.kids()[0];
        const Expr& r = f.kids()[1];
        if (depends_on(r, var)) return std::nullopt;
        Expr rp1 = normalize(r + Expr::num(1));
        if (base == t) {
            if (rp1.is_zero_literal()) return Expr::fn(FnKind::Log, t);
            return Expr::pow(t, rp1) / rp1;
        }
        auto lin = linear_in(base, var);
        if (!lin) return std::nullopt;
        if (rp1.is_zero_literal()) return Expr::fn(FnKind::Log, base) / lin->first;
        return Expr::pow(base, rp1) / (lin->first * rp1);
    }
    if (f.kind() == NodeKind::Fn) {
        auto lin = linear_in(f.kids()[0], var);
        if (!lin) return std::nullopt;
        const Expr& a = lin->first;
        switch (f.fn_kind()) {
            case FnKind::Exp: return f / a;
            case FnKind::Sin: return (Expr::num(0) - Expr::fn(FnKind::Cos, f.kids()[0])) / a;
            case FnKind::Cos: return Expr::fn(FnKind::Sin, f.kids()[0]) / a;
            case FnKind::Log: {
                const Expr& u = f.kids()[0];
                return (u * Expr::fn(FnKind::Log, u) - u) / a;
            }
        }
    }
    return std::nullopt;
}

// power of the bare variable with nonnegative integer exponent?
std::optional<long> poly_degree(const Expr& f, const std::string& var) {
    Expr t = Expr::sym(var);
    if (f == t) return 1;
    if (f.kind() == NodeKind::Pow && f.kids()[0] == t && f.kids()[1].kind() == NodeKind::Num) {
        const Rational& r = f.kids()[1].value();
        if (is_integer(r) && r > 0) return num(r).convert_to<long>();
    }
    return std::nullopt;
}

std::optional<Expr> integrate_term(const Expr& term, const std::string& var) {
    ExprList dep, cst;
    if (term.kind() == NodeKind::Mul) {
        for (const auto& f : term.kids())
            (depends_on(f, var) ? dep : cst).push_back(f);
    } else {
        (depends_on(term, var) ? dep : cst).push_back(term);
    }
    Expr c = cst.empty() ? Expr::num(1) : Expr::mul(cst);

    std::optional<Expr> core;
    if (dep.empty()) {
        core = Expr::sym(var);
    } else if (dep.size() == 1) {
        core = integrate_factor(dep[0], var);
    } else if (dep.size() == 2) {
        // polynomial times exponential, either order
        for (int i = 0; i < 2 && !core; ++i) {
            auto n = poly_degree(dep[i], var);
            const Expr& other = dep[1 - i];
            if (!n || other.kind() != NodeKind::Fn || other.fn_kind() != FnKind::Exp) continue;
            auto lin = linear_in(other.kids()[0], var);
            if (lin) core = poly_exp_integral(*n, lin->first, other.kids()[0], var);
        }
    }
    if (!core) return std::nullopt;
    return c * *core;
}

bool constant_expr(const Expr& e) { return !depends_on(e, "x") && !depends_on(e, "y"); }

// the constant value of an expression of (x, y), or nullopt
std::optional<Expr> const_of(const Expr& e, const ParameterTable& params, Rng& rng) {
    Expr ec = normalize(e);
    if (is_zero(clear_denominators(ec), params, rng)) return Expr::num(0);
    if (constant_expr(ec)) return ec;
    if (is_zero(clear_denominators(differentiate(ec, "x")), params, rng) &&
        is_zero(clear_denominators(differentiate(ec, "y")), params, rng))
        return normalize(substitute(ec, {{"x", Expr::num(1)}, {"y", Expr::num(1)}}));
    return std::nullopt;
}

// --- inversion ------------------------------------------------------------

// solve e(t) = rhs for t through a chain of invertible univariate steps
std::optional<Expr> invert_univariate(const Expr& e, const std::string& var, const Expr& rhs) {
    Expr t = Expr::sym(var);
    Expr ec = normalize(e);
    if (ec == t) return normalize(rhs);
    switch (ec.kind()) {
        case NodeKind::Add: {
            ExprList dep;
            Expr cst = Expr::num(0);
            for (const auto& k : ec.kids())
                if (depends_on(k, var)) dep.push_back(k); else cst = cst + k;
            if (dep.empty()) return std::nullopt;
            return invert_univariate(Expr::add(dep), var, rhs - cst);
        }
        case NodeKind::Mul: {
            ExprList dep;
            Expr cst = Expr::num(1);
            for (const auto& k : ec.kids())
                if (depends_on(k, var)) dep.push_back(k); else cst = cst * k;
            if (dep.size() != 1) return std::nullopt;
            return invert_univariate(dep[0], var, rhs / cst);
        }
        case NodeKind::Pow: {
            const Expr& base = ec.kids()[0];
            const Expr& r = ec.kids()[1];
            if (depends_on(r, var) || !depends_on(base, var)) return std::nullopt;
            return invert_univariate(base, var, Expr::pow(rhs, Expr::num(1) / r));
        }
        case NodeKind::Fn:
            if (ec.fn_kind() == FnKind::Exp)
                return invert_univariate(ec.kids()[0], var, Expr::fn(FnKind::Log, rhs));
            if (ec.fn_kind() == FnKind::Log)
                return invert_univariate(ec.kids()[0], var, Expr::fn(FnKind::Exp, rhs));
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

bool inverse_checks_out(const PointTransformation& T, const ParameterTable& params, Rng& rng) {
    if (!T.inverse) return false;
    int good = 0;
    for (int attempt = 0; attempt < 200 && good < 8; ++attempt) {
        std::map<std::string, double> pt;
        for (const auto& p : params.all())
            if (p.sample) pt[p.name] = to_double(*p.sample);
        bool positive = attempt % 2 == 1;
        double x0 = to_double(random_sample(rng, positive));
        double y0 = to_double(random_sample(rng, positive));
        pt["x"] = x0;
        pt["y"] = y0;
        try {
            double xt = eval_numeric(T.P, pt);
            double yt = eval_numeric(T.Q, pt);
            std::map<std::string, double> back = pt;
            back["x"] = xt;
            back["y"] = yt;
            double xr = eval_numeric(T.inverse->first, back);
            double yr = eval_numeric(T.inverse->second, back);
            if (std::abs(xr - x0) > 1e-9 * (1 + std::abs(x0)) ||
                std::abs(yr - y0) > 1e-9 * (1 + std::abs(y0)))
                return false;
            ++good;
        } catch (const EvalError&) {
            continue;  // out of domain, try another point
        }
    }
    return good >= 8;
}

// best-effort symbolic inverse for the shapes the integrator produces
void attach_inverse(PointTransformation& T, const ParameterTable& params, Rng& rng) {
    auto univar = [](const Expr& e, const std::string& var, const std::string& other) {
        return depends_on(e, var) && !depends_on(e, other);
    };
    // placeholder names for the tilde coordinates during assembly
    Expr xt = Expr::sym("xt_"), yt = Expr::sym("yt_");
    auto finish = [&](const Expr& ix, const Expr& iy) {
        std::map<std::string, Expr> ren{{"xt_", Expr::sym("x")}, {"yt_", Expr::sym("y")}};
        T.inverse = std::make_pair(normalize(substitute(ix, ren)), normalize(substitute(iy, ren)));
        if (!inverse_checks_out(T, params, rng)) T.inverse.reset();
    };

    struct Shot {
        const Expr *lead, *rest;  // lead = tilde coordinate given by a univariate map
        Expr tilde_lead, tilde_rest;
        bool lead_is_p;
    };
    for (const Shot& s : {Shot{&T.P, &T.Q, xt, yt, true}, Shot{&T.Q, &T.P, yt, xt, false}}) {
        for (const std::string& v : {std::string("x"), std::string("y")}) {
            std::string w = v == "x" ? "y" : "x";
            if (!univar(*s.lead, v, w)) continue;
            auto vinv = invert_univariate(*s.lead, v, s.tilde_lead);
            if (!vinv) continue;
            Expr iv = *vinv;
            std::optional<Expr> iw;
            if (!depends_on(*s.rest, v)) {
                iw = invert_univariate(*s.rest, w, s.tilde_rest);
            } else if (auto lin = linear_in(*s.rest, w)) {
                Expr expr = (s.tilde_rest - lin->second) / lin->first;
                iw = normalize(substitute(expr, {{v, iv}}));
            }
            if (!iw) continue;
            Expr ix = v == "x" ? iv : *iw;
            Expr iy = v == "x" ? *iw : iv;
            finish(ix, iy);
            if (T.inverse) return;
        }
    }
}

// pushforward component check: f must map to scale * the unit field on `axis`
std::optional<Expr> axis_scale(const VectorField& f, const PointTransformation& T, int axis,
                               const ParameterTable& params, Rng& rng) {
    Expr fp = normalize(apply_field(f, T.P));
    Expr fq = normalize(apply_field(f, T.Q));
    Expr& along = axis == 0 ? fp : fq;
    Expr& across = axis == 0 ? fq : fp;
    if (!is_zero(clear_denominators(across), params, rng)) return std::nullopt;
    auto c = const_of(along, params, rng);
    if (!c || is_zero(*c, params, rng)) return std::nullopt;
    if (is_zero(clear_denominators(*c - Expr::num(1)), params, rng)) return Expr::num(1);
    return c;
}

RectificationResult degraded(ExprList residual, std::string note) {
    RectificationResult out;
    out.solved = false;
    out.residual = std::move(residual);
    out.note = std::move(note);
    return out;
}

}  // namespace

std::optional<Expr> antiderivative(const Expr& e, const std::string& var) {
    Expr ec = normalize(e);
    ExprList terms = ec.kind() == NodeKind::Add ? ec.kids() : ExprList{ec};
    Expr sum = Expr::num(0);
    for (const auto& t : terms) {
        auto part = integrate_term(t, var);
        if (!part) return std::nullopt;
        sum = sum + *part;
    }
    return normalize(sum);
}

std::optional<Expr> potential_from_form(const Expr& m, const Expr& n,
                                        const ParameterTable& params, Rng& rng) {
    if (!is_zero(clear_denominators(differentiate(m, "y") - differentiate(n, "x")), params, rng))
        return std::nullopt;
    // the correction term may show spurious dependence on the integrated
    // variable through uncancelled rational constants; test derivatives instead
    auto settle = [&](Expr cp, const std::string& var) -> std::optional<Expr> {
        cp = normalize(cp);
        if (is_zero(clear_denominators(cp), params, rng)) return Expr::num(0);
        if (depends_on(cp, var)) {
            if (!is_zero(clear_denominators(differentiate(cp, var)), params, rng))
                return std::nullopt;
            cp = normalize(substitute(cp, {{var, Expr::num(1)}}));
        }
        return cp;
    };
    if (auto u = antiderivative(m, "x")) {
        if (auto cp = settle(n - differentiate(*u, "y"), "x"))
            if (auto c = antiderivative(*cp, "y")) return normalize(*u + *c);
    }
    if (auto u = antiderivative(n, "y")) {
        if (auto cp = settle(m - differentiate(*u, "x"), "y"))
            if (auto c = antiderivative(*cp, "x")) return normalize(*u + *c);
    }
    return std::nullopt;
}

RectificationResult rectify_pair(const VectorField& A, const VectorField& B,
                                 const ParameterTable& params, Rng& rng) {
    VectorField br = bracket(A, B);
    if (!is_zero(br.xi, params, rng) || !is_zero(br.eta, params, rng))
        throw FieldError{"rectify_pair: fields do not commute"};
    if (generic_rank({A, B}, 0, params, rng) != 2)
        throw FieldError{"rectify_pair: pair is not generically rank 2"};

    Expr det = normalize(A.xi * B.eta - A.eta * B.xi);
    Expr ux = normalize(B.eta / det), uy = normalize(Expr::num(0) - B.xi / det);
    Expr vx = normalize(Expr::num(0) - A.eta / det), vy = normalize(A.xi / det);

    auto u = potential_from_form(ux, uy, params, rng);
    auto v = potential_from_form(vx, vy, params, rng);
    if (!u || !v)
        return degraded({ux, uy, vx, vy},
                        "quadrature outside the integrator's scope; gradients of (u, v) listed");

    RectificationResult out;
    out.transformation = {*u, *v, std::nullopt};
    auto ca = axis_scale(A, out.transformation, 0, params, rng);
    auto cb = axis_scale(B, out.transformation, 1, params, rng);
    if (!ca || !cb)
        return degraded({ux, uy, vx, vy}, "pushforward verification failed after quadrature");
    out.scales = {*ca, *cb};
    out.solved = true;
    attach_inverse(out.transformation, params, rng);
    return out;
}

RectificationResult rectify_rank1_pair(const VectorField& f1, const VectorField& f2,
                                       const ParameterTable& params, Rng& rng) {
    VectorField br = bracket(f1, f2);
    if (!is_zero(br.xi, params, rng) || !is_zero(br.eta, params, rng))
        throw FieldError{"rectify_rank1_pair: fields do not commute"};

    bool ydir = is_zero(f1.xi, params, rng) && is_zero(f2.xi, params, rng);
    bool xdir = !ydir && is_zero(f1.eta, params, rng) && is_zero(f2.eta, params, rng);
    if (!ydir && !xdir)
        return degraded({f1.xi, f1.eta, f2.xi, f2.eta},
                        "pair is not aligned with a coordinate direction");

    // along: the coordinate the fields move; across: the invariant one
    std::string along = ydir ? "y" : "x";
    std::string across = ydir ? "x" : "y";
    Expr g1 = ydir ? f1.eta : f1.xi;
    Expr g2 = ydir ? f2.eta : f2.xi;
    if (is_zero(g1, params, rng)) throw FieldError{"rectify_rank1_pair: f1 vanishes"};

    Expr rho = normalize(g2 / g1);
    if (!is_zero(clear_denominators(differentiate(rho, along)), params, rng))
        throw FieldError{"rectify_rank1_pair: ratio f2/f1 is not constant along f1"};
    if (is_zero(clear_denominators(differentiate(rho, across)), params, rng))
        throw FieldError{"rectify_rank1_pair: ratio f2/f1 is constant, coordinates degenerate"};

    auto q = antiderivative(normalize(Expr::num(1) / g1), along);
    if (!q)
        return degraded({normalize(Expr::num(1) / g1)},
                        "quadrature for the dependent coordinate is out of scope");

    RectificationResult out;
    out.transformation = {rho, normalize(*q), std::nullopt};
    auto c = axis_scale(f1, out.transformation, 1, params, rng);
    if (!c) return degraded({normalize(Expr::num(1) / g1)}, "pushforward verification failed");
    Expr f2q = normalize(apply_field(f2, out.transformation.Q));
    if (!is_zero(clear_denominators(f2q - *c * rho), params, rng) ||
        !is_zero(apply_field(f2, out.transformation.P), params, rng))
        return degraded({f2q}, "f2 does not land on xt * d/dyt");
    out.scales = {*c, *c};
    out.solved = true;
    attach_inverse(out.transformation, params, rng);
    return out;
}

// least-squares coefficients (rationalized) expressing target within basis pairs
std::optional<std::vector<Rational>> span_coefficients(
    const std::vector<std::pair<Expr, Expr>>& basis, const Expr& fp, const Expr& fq,
    const ParameterTable& params, Rng& rng) {
    size_t k = basis.size();
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    auto samples = params.sample_bindings();
    for (int attempt = 0; attempt < 400 && rows.size() < 2 * (k + 4); ++attempt) {
        std::map<std::string, double> pt;
        for (const auto& [name, e] : samples) pt[name] = eval_numeric(e, {});
        bool positive = attempt % 2 == 1;
        pt["x"] = to_double(random_sample(rng, positive));
        pt["y"] = to_double(random_sample(rng, positive));
        try {
            std::vector<double> rp(k), rq(k);
            for (size_t j = 0; j < k; ++j) {
                rp[j] = eval_numeric(basis[j].first, pt);
                rq[j] = eval_numeric(basis[j].second, pt);
            }
            double bp = eval_numeric(fp, pt), bq = eval_numeric(fq, pt);
            rows.push_back(rp);
            rhs.push_back(bp);
            rows.push_back(rq);
            rhs.push_back(bq);
        } catch (const EvalError&) {
            continue;
        }
    }
    if (rows.size() < 2 * (k + 4)) return std::nullopt;

    // normal equations, Gaussian elimination with partial pivoting
    std::vector<std::vector<double>> g(k, std::vector<double>(k + 1, 0.0));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t i = 0; i < k; ++i) {
            for (size_t j = 0; j < k; ++j) g[i][j] += rows[r][i] * rows[r][j];
            g[i][k] += rows[r][i] * rhs[r];
        }
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < k; ++r)
            if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
        if (std::abs(g[piv][col]) < 1e-10) return std::nullopt;
        std::swap(g[col], g[piv]);
        for (size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            double m = g[r][col] / g[col][col];
            for (size_t j = col; j <= k; ++j) g[r][j] -= m * g[col][j];
        }
    }
    std::vector<Rational> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = rationalize(g[i][k] / g[i][i], 4096);

    // exact residual check on the rationalized coefficients
    Expr resp = fp, resq = fq;
    for (size_t j = 0; j < k; ++j) {
        resp = resp - qe(c[j]) * basis[j].first;
        resq = resq - qe(c[j]) * basis[j].second;
    }
    if (!is_zero(clear_denominators(resp), params, rng) ||
        !is_zero(clear_denominators(resq), params, rng))
        return std::nullopt;
    return c;
}

std::pair<PointTransformation, NormalizationTrace> affine_normalize(
    const std::vector<VectorField>& fields, const Sl2Triple& triple,
    const PointTransformation& T, int N, const ParameterTable& params, Rng& rng) {
    int d = N - 1;
    VectorField H = combine(fields, triple.H);
    VectorField Y = combine(fields, triple.Y);

    auto alpha = const_of(apply_field(H, T.P) + Expr::num(2) * T.P, params, rng);
    auto gamma = const_of(apply_field(H, T.Q) + Expr::num(d) * T.Q, params, rng);
    if (!alpha || !gamma)
        throw FieldError{"affine_normalize: H does not act affinely in the rectified coordinates"};
    auto beta = const_of(apply_field(Y, T.P) + T.P * T.P - *alpha * T.P, params, rng);
    if (!beta)
        throw FieldError{"affine_normalize: Y does not act quadratically on the base coordinate"};

    NormalizationTrace trace;
    trace.d = d;
    trace.alpha = *alpha;
    trace.beta = *beta;
    trace.gamma = *gamma;
    trace.translation = {normalize(*alpha / Expr::num(2)), normalize(*gamma / Expr::num(d))};

    PointTransformation T2;
    T2.P = normalize(T.P - trace.translation.first);
    T2.Q = normalize(T.Q - trace.translation.second);
    if (T.inverse) {
        std::map<std::string, Expr> shift{{"x", Expr::sym("x") + trace.translation.first},
                                          {"y", Expr::sym("y") + trace.translation.second}};
        T2.inverse = std::make_pair(normalize(substitute(T.inverse->first, shift)),
                                    normalize(substitute(T.inverse->second, shift)));
    }

    if (!is_zero(clear_denominators(apply_field(Y, T2.P) + T2.P * T2.P), params, rng))
        throw FieldError{"affine_normalize: Y is not -x^2 d/dx + ... after the translation"};

    Expr r = normalize(apply_field(Y, T2.Q) + Expr::num(d) * T2.P * T2.Q);
    trace.k = Expr::num(0);
    if (!is_zero(clear_denominators(r), params, rng)) {
        Expr qpow = Expr::pow(T2.Q, qe(Rational(d + 2, d)));
        auto kc = const_of(normalize(r / qpow), params, rng);
        if (!kc || !is_zero(clear_denominators(r - *kc * qpow), params, rng))
            throw FieldError{"affine_normalize: Y does not act polynomially on the fiber coordinate"};
        trace.k = *kc;
        throw FieldError{"affine_normalize: obstruction k = " + to_string(*kc) +
                         " is nonzero, the weight-0 component is inconsistent"};
    }

    // every generator must land in the canonical polynomial span
    std::vector<std::pair<Expr, Expr>> basis;
    basis.emplace_back(Expr::num(1), Expr::num(0));
    basis.emplace_back(T2.P, qe(Rational(d, 2)) * T2.Q);
    basis.emplace_back(normalize(T2.P * T2.P), normalize(Expr::num(d) * T2.P * T2.Q));
    for (int a = 0; a < N; ++a)
        basis.emplace_back(Expr::num(0), normalize(Expr::pow(T2.P, Expr::num(a))));
    basis.emplace_back(Expr::num(0), T2.Q);
    auto samples = params.sample_bindings();
    for (const auto& f : fields) {
        Expr fp = normalize(substitute(apply_field(f, T2.P), samples));
        Expr fq = normalize(substitute(apply_field(f, T2.Q), samples));
        std::vector<std::pair<Expr, Expr>> sbasis;
        for (const auto& [p, q] : basis)
            sbasis.emplace_back(normalize(substitute(p, samples)), normalize(substitute(q, samples)));
        if (!span_coefficients(sbasis, fp, fq, params, rng))
            throw FieldError{"affine_normalize: a generator falls outside the canonical span"};
    }
    return {T2, trace};
}

}  // namespace linsym
