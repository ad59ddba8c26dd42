#include "linsym/linearizer.hpp"

namespace linsym {

const char* case_name(CaseKind k) {
    switch (k) {
        case CaseKind::MaximalSymmetry: return "MaximalSymmetry";
        case CaseKind::Solvable4: return "Solvable4";
        case CaseKind::Solvable5RealDistinct: return "Solvable5RealDistinct";
        case CaseKind::Solvable5Complex: return "Solvable5Complex";
        case CaseKind::Solvable5Repeated: return "Solvable5Repeated";
        case CaseKind::NotCovered: return "NotCovered";
    }
    return "?";
}

namespace {

Expr quad_expr(const Quad& q) {
    Expr e = Expr::num(q.a);
    if (q.b != 0)
        e = e + Expr::num(q.b) * Expr::pow(Expr::num(q.d), Expr::num(Rational(1, 2)));
    return normalize(e);
}

QVec negated(const QVec& v) {
    QVec out = v;
    for (auto& q : out) q = -q;
    return out;
}

// coordinates of v in the basis of the subspace W, or nullopt
std::optional<QVec> coords_in(const Subspace& W, const QVec& v) {
    if (W.empty()) return std::nullopt;
    QMat m(v.size(), QVec(W.size(), Quad{}));
    for (size_t j = 0; j < W.size(); ++j)
        for (size_t i = 0; i < v.size(); ++i) m[i][j] = W[j][i];
    return qmat_solve(m, v);
}

// matrix of ad(u) restricted to the invariant subspace W, in W's basis
std::optional<QMat> ad_restricted(const LieAlgebraStructure& L, const QVec& u,
                                  const Subspace& W) {
    QMat m(W.size(), QVec(W.size(), Quad{}));
    for (size_t j = 0; j < W.size(); ++j) {
        auto c = coords_in(W, L.bracket_vec(u, W[j]));
        if (!c) return std::nullopt;
        for (size_t i = 0; i < W.size(); ++i) m[i][j] = (*c)[i];
    }
    return m;
}

bool is_abelian(const LieAlgebraStructure& L, const Subspace& W) {
    for (size_t i = 0; i < W.size(); ++i)
        for (size_t j = i + 1; j < W.size(); ++j)
            if (!qvec_is_zero(L.bracket_vec(W[i], W[j]))) return false;
    return true;
}

int rank_of(const LieAlgebraStructure& L, const Subspace& W, const ParameterTable& params,
            Rng& rng) {
    std::vector<VectorField> fs;
    for (const auto& v : W) fs.push_back(L.realize(v));
    return generic_rank(fs, 0, params, rng);
}

struct NotCoveredError {
    std::string reason;
};

// ---------------------------------------------------------------------------
// maximal case (dim N+4)

struct MaximalAnalysis {
    LieAlgebraStructure L;
    Subspace radical_space;
    Sl2Triple eff;  // orientation matching the pair
    LinearizingPair pair;
};

MaximalAnalysis analyze_maximal(const std::vector<VectorField>& fields, int N,
                                const ParameterTable& params, Rng& rng) {
    MaximalAnalysis a;
    a.L = structure_constants(fields, params, rng);
    LeviDecomposition levi = levi_decomposition(a.L);
    if (levi.radical.size() != static_cast<size_t>(N) + 1)
        throw NotCoveredError{"radical dimension is " + std::to_string(levi.radical.size()) +
                              ", expected " + std::to_string(N + 1)};
    if (levi.levi.size() != 3) throw NotCoveredError{"Levi complement is not sl(2)"};
    if (rank_of(a.L, levi.radical, params, rng) != 1)
        throw NotCoveredError{"radical is not of rank 1"};
    a.radical_space = levi.radical;
    Sl2Triple triple = sl2_standard_triple(a.L, levi.levi);
    ModuleDecomposition dec = decompose_radical(a.L, triple, levi.radical);
    a.pair = select_linearizing_pair(a.L, dec, N, params, rng);
    a.eff = dec.used;
    if (a.pair.X == a.eff.Y)  // pair selection fell back to the opposite Borel
        a.eff = {a.eff.Y, a.eff.X, negated(a.eff.H)};
    return a;
}

// ---------------------------------------------------------------------------
// dim-4 case

struct Dim4Analysis {
    LieAlgebraStructure L;
    Subspace derived;
    Quad eigenvalue;  // raw multiplicity-3 eigenvalue of the quotient action
};

Dim4Analysis analyze_dim4(const std::vector<VectorField>& fields, const ParameterTable& params,
                          Rng& rng) {
    Dim4Analysis a;
    a.L = structure_constants(fields, params, rng);
    a.derived = derived_algebra(a.L);
    if (a.derived.size() != 3) throw NotCoveredError{"derived algebra is not 3-dimensional"};
    if (!is_abelian(a.L, a.derived)) throw NotCoveredError{"derived algebra is not abelian"};
    if (generic_rank(fields, 0, params, rng) != 1)
        throw NotCoveredError{"algebra is not of rank 1"};

    QVec q(a.L.n, Quad{});
    for (size_t i = 0; i < a.L.n; ++i) {
        QVec cand(a.L.n, Quad{});
        cand[i] = Quad(1);
        if (!subspace_contains(a.derived, cand)) {
            q = cand;
            break;
        }
    }
    auto comps = adjoint_eigen(a.L, q, a.derived);
    if (comps.size() != 1 || !comps[0].im.is_zero() || comps[0].vectors.size() != 3)
        throw NotCoveredError{"quotient action on g' is not a single eigenvalue of multiplicity 3"};
    if (comps[0].re.is_zero()) throw NotCoveredError{"quotient eigenvalue is zero"};
    a.eigenvalue = comps[0].re;
    return a;
}

// ---------------------------------------------------------------------------
// dim-5 case

struct Dim5Analysis {
    LieAlgebraStructure L;
    Subspace derived;
    QVec e1, e2;  // ordered complement basis: ad e2 = -I on g', ad e1 has a 0 weight
    QVec w;       // weight-(0, -1) vector
    QMat M;       // ad e1 restricted to g'
    EigenData eigen;
};

Dim5Analysis analyze_dim5(const std::vector<VectorField>& fields, const ParameterTable& params,
                          Rng& rng) {
    Dim5Analysis a;
    a.L = structure_constants(fields, params, rng);
    a.derived = derived_algebra(a.L);
    if (a.derived.size() != 3) throw NotCoveredError{"derived algebra is not 3-dimensional"};
    if (!is_abelian(a.L, a.derived)) throw NotCoveredError{"derived algebra is not abelian"};
    if (rank_of(a.L, a.derived, params, rng) != 1)
        throw NotCoveredError{"derived algebra is not of rank 1"};
    auto A = abelian_complement(a.L);
    if (!A) throw NotCoveredError{"no abelian complement of the derived algebra"};

    auto m1 = ad_restricted(a.L, (*A)[0], a.derived);
    auto m2 = ad_restricted(a.L, (*A)[1], a.derived);
    if (!m1 || !m2) throw NotCoveredError{"derived algebra is not invariant under the complement"};

    // scalar element: s*M1 + t*M2 = k*I has a solution with k != 0
    QMat sys(9, QVec(3, Quad{}));
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            sys[3 * i + j][0] = (*m1)[i][j];
            sys[3 * i + j][1] = (*m2)[i][j];
            if (i == j) sys[3 * i + j][2] = Quad(-1);
        }
    QVec scalar;
    for (const auto& sol : qmat_nullspace(sys))
        if (!sol[2].is_zero()) {
            scalar = sol;
            break;
        }
    if (scalar.empty())
        throw NotCoveredError{"no complement element acts on g' as a nonzero scalar"};
    Quad k = scalar[2];
    a.eigen.raw_k = k;
    // normalize: ad e2 = -I
    a.e2.assign(a.L.n, Quad{});
    for (size_t i = 0; i < a.L.n; ++i)
        a.e2[i] = (scalar[0] * (*A)[0][i] + scalar[1] * (*A)[1][i]) * (Quad(-1) / k);

    // companion: any complement element independent of e2
    Subspace e2span = span_of({a.e2});
    QVec base = subspace_contains(e2span, (*A)[0]) ? (*A)[1] : (*A)[0];

    QMat m0 = *ad_restricted(a.L, base, a.derived);
    // shift candidates: real eigenvalues nu of ad(base); e1 = base + nu*e2 then
    // kills the corresponding weight vector
    for (const auto& comp : adjoint_eigen(a.L, base, a.derived)) {
        if (!comp.im.is_zero() || comp.vectors.size() != 1) continue;
        Quad nu = comp.re;
        QVec e1(a.L.n, Quad{});
        for (size_t i = 0; i < a.L.n; ++i) e1[i] = base[i] + nu * a.e2[i];
        QMat M = m0;
        for (size_t i = 0; i < 3; ++i) M[i][i] = M[i][i] - nu;

        // charpoly x^3 + p2 x^2 + p1 x (the zero root belongs to w)
        QVec p = qmat_charpoly(M);
        if (!p[0].is_zero()) continue;
        Quad p2 = p[2], p1 = p[1];
        if (p1.is_zero()) continue;  // lambda * mu must be nonzero

        const QVec& w = comp.vectors[0];
        if (!qvec_is_zero(a.L.bracket_vec(e1, w))) continue;
        std::vector<VectorField> pairf{a.L.realize(e1), a.L.realize(w)};
        if (generic_rank(pairf, 0, params, rng) != 2) continue;

        a.e1 = e1;
        a.w = w;
        a.M = M;
        a.eigen.sum = -p2;
        a.eigen.product = p1;
        Quad disc = p2 * p2 / Quad(4) - p1;
        long long field = a.L.disc;
        auto root = quad_sqrt(disc, field);
        if (!root)
            throw NotCoveredError{"quotient eigenvalues lie outside the supported quadratic field"};
        if (disc.is_zero()) {
            a.eigen.repeated = true;
            a.eigen.lambda = a.eigen.mu = -p2 / Quad(2);
        } else if (!root->second.is_zero()) {
            a.eigen.complex_pair = true;
            a.eigen.re = -p2 / Quad(2);
            a.eigen.im = root->second.to_double() < 0 ? -root->second : root->second;
        } else {
            a.eigen.lambda = -p2 / Quad(2) + root->first;
            a.eigen.mu = -p2 / Quad(2) - root->first;
        }
        return a;
    }
    throw NotCoveredError{"no ordering of the complement yields weights (0,k), (lambda,k), (mu,k)"};
}

CaseKind dim5_kind(const EigenData& e) {
    if (e.complex_pair) return CaseKind::Solvable5Complex;
    if (e.repeated) return CaseKind::Solvable5Repeated;
    return CaseKind::Solvable5RealDistinct;
}

// exact span membership of every generator in the target canonical algebra
bool generators_in_span(const std::vector<VectorField>& fields,
                        const std::vector<std::pair<Expr, Expr>>& basis,
                        const ParameterTable& params, Rng& rng) {
    auto samples = params.sample_bindings();
    std::vector<std::pair<Expr, Expr>> sbasis;
    for (const auto& [p, q] : basis)
        sbasis.emplace_back(normalize(substitute(p, samples)), normalize(substitute(q, samples)));
    for (const auto& f : fields) {
        Expr fp = normalize(substitute(f.xi, samples));
        Expr fq = normalize(substitute(f.eta, samples));
        if (!span_coefficients(sbasis, fp, fq, params, rng)) return false;
    }
    return true;
}

// pushforward coefficient pair of f through T, kept in source coordinates
std::pair<Expr, Expr> push_pair(const VectorField& f, const PointTransformation& T) {
    return {normalize(apply_field(f, T.P)), normalize(apply_field(f, T.Q))};
}

}  // namespace

CaseTag classify(const std::vector<VectorField>& fields, int N, const ParameterTable& params,
                 Rng& rng) {
    size_t m = fields.size();
    try {
        if (m == static_cast<size_t>(N) + 4) {
            analyze_maximal(fields, N, params, rng);
            return {CaseKind::MaximalSymmetry, N, ""};
        }
        if (N == 3 && m == 4) {
            analyze_dim4(fields, params, rng);
            return {CaseKind::Solvable4, N, ""};
        }
        if (N == 3 && m == 5) {
            auto a = analyze_dim5(fields, params, rng);
            return {dim5_kind(a.eigen), N, "", a.eigen};
        }
    } catch (const NotCoveredError& e) {
        return {CaseKind::NotCovered, N, e.reason};
    } catch (const LieError& e) {
        return {CaseKind::NotCovered, N, e.message};
    } catch (const FieldError& e) {
        return {CaseKind::NotCovered, N, e.message};
    }
    std::string dims = N == 3 ? "{4, 5, 7}" : "{" + std::to_string(N + 4) + "}";
    return {CaseKind::NotCovered, N,
            "dimension " + std::to_string(m) + " not in " + dims};
}

LinearizationResult linearize_maximal(const std::vector<VectorField>& fields, int N,
                                      const OdeSpec& ode, const ParameterTable& params,
                                      Rng& rng) {
    if (N < 3)
        throw FieldError{"linearize_maximal: the construction requires order N >= 3"};
    MaximalAnalysis a;
    try {
        a = analyze_maximal(fields, N, params, rng);
    } catch (const NotCoveredError& e) {
        throw LieError{"structure analysis: " + e.reason};
    }

    LinearizationResult out;
    out.tag = {CaseKind::MaximalSymmetry, N, ""};
    out.pair = {a.L.realize(a.pair.X), a.L.realize(a.pair.V)};
    RectificationResult rect = rectify_pair(out.pair[0], out.pair[1], params, rng);
    if (!rect.solved) throw FieldError{"rectification: " + rect.note};
    auto [t2, trace] = affine_normalize(fields, a.eff, rect.transformation, N, params, rng);
    out.transformation = t2;
    out.trace = trace;
    out.target = {N, Expr::num(0)};
    out.span_ok = true;  // affine_normalize verified canonical form (2) membership
    out.pullback_ok = pullback_check(ode, out.transformation, out.target, params, rng);
    out.solved = out.pullback_ok;
    if (!out.pullback_ok) out.note = "pullback verification failed";
    return out;
}

LinearizationResult linearize_dim4(const std::vector<VectorField>& fields, const OdeSpec& ode,
                                   const ParameterTable& params, Rng& rng) {
    Dim4Analysis a;
    try {
        a = analyze_dim4(fields, params, rng);
    } catch (const NotCoveredError& e) {
        throw LieError{"structure analysis: " + e.reason};
    }

    // try ordered eigenvector pairs until one rectifies with an invertible map
    LinearizationResult out;
    out.tag = {CaseKind::Solvable4, 3, ""};
    RectificationResult rect;
    QVec f3coords;
    bool found = false;
    for (size_t i = 0; i < 3 && !found; ++i)
        for (size_t j = 0; j < 3 && !found; ++j) {
            if (i == j) continue;
            VectorField f1 = a.L.realize(a.derived[i]);
            VectorField f2 = a.L.realize(a.derived[j]);
            try {
                rect = rectify_rank1_pair(f1, f2, params, rng);
            } catch (const FieldError&) {
                continue;
            }
            if (!rect.solved || !rect.transformation.inverse) continue;
            out.pair = {f1, f2};
            f3coords = a.derived[3 - i - j];
            found = true;
        }
    if (!found)
        throw FieldError{"rectification: no eigenvector pair yields invertible coordinates"};

    // phi is the remaining eigenvector's coefficient, written in the new base variable
    VectorField f3 = a.L.realize(f3coords);
    Expr c = normalize(apply_field(f3, rect.transformation.Q));
    if (!is_zero(apply_field(f3, rect.transformation.P), params, rng))
        throw FieldError{"canonicalization: third eigenvector is not vertical"};
    const auto& inv = *rect.transformation.inverse;
    Expr phi = normalize(substitute(c, {{"x", inv.first}, {"y", inv.second}}));
    if (depends_on(phi, "y"))
        throw FieldError{"canonicalization: phi depends on the dependent variable"};
    Expr phi2 = normalize(differentiate(differentiate(phi, "x"), "x"));
    if (is_zero(phi2, params, rng))
        throw FieldError{"inconsistency: phi'' = 0 contradicts independence of 1, x, phi"};
    out.phi = phi;
    out.transformation = rect.transformation;
    out.target = {3, normalize(differentiate(phi2, "x") / phi2 * Expr::sym("y2"))};

    std::vector<std::pair<Expr, Expr>> basis;
    basis.emplace_back(Expr::num(0), Expr::num(1));
    basis.emplace_back(Expr::num(0), rect.transformation.P);
    basis.emplace_back(Expr::num(0), c);
    basis.emplace_back(Expr::num(0), rect.transformation.Q);
    std::vector<VectorField> pushed;
    for (const auto& f : fields) {
        auto [fp, fq] = push_pair(f, rect.transformation);
        pushed.push_back({fp, fq});
    }
    out.span_ok = generators_in_span(pushed, basis, params, rng);
    out.pullback_ok = pullback_check(ode, out.transformation, out.target, params, rng);
    out.solved = out.pullback_ok && out.span_ok;
    if (!out.solved) out.note = "verification failed";
    return out;
}

LinearizationResult linearize_dim5(const std::vector<VectorField>& fields, const OdeSpec& ode,
                                   const ParameterTable& params, Rng& rng) {
    Dim5Analysis a;
    try {
        a = analyze_dim5(fields, params, rng);
    } catch (const NotCoveredError& e) {
        throw LieError{"structure analysis: " + e.reason};
    }

    LinearizationResult out;
    out.tag = {dim5_kind(a.eigen), 3, "", a.eigen};
    out.eigen = a.eigen;
    out.pair = {a.L.realize(a.e1), a.L.realize(a.w)};
    RectificationResult rect = rectify_pair(out.pair[0], out.pair[1], params, rng);
    if (!rect.solved) throw FieldError{"rectification: " + rect.note};
    out.transformation = rect.transformation;

    // y''' = (lambda+mu) y'' - lambda*mu y' covers all three subcases
    Expr sum = quad_expr(a.eigen.sum), prod = quad_expr(a.eigen.product);
    out.target = {3, normalize(sum * Expr::sym("y2") - prod * Expr::sym("y1"))};

    const PointTransformation& T = rect.transformation;
    std::vector<std::pair<Expr, Expr>> basis;
    basis.emplace_back(Expr::num(1), Expr::num(0));  // d/dxt
    basis.emplace_back(Expr::num(0), T.Q);           // yt d/dyt
    basis.emplace_back(Expr::num(0), Expr::num(1));  // d/dyt
    if (a.eigen.complex_pair) {
        Expr ex = Expr::fn(FnKind::Exp, quad_expr(a.eigen.re) * T.P);
        Expr barg = quad_expr(a.eigen.im) * T.P;
        basis.emplace_back(Expr::num(0), normalize(ex * Expr::fn(FnKind::Cos, barg)));
        basis.emplace_back(Expr::num(0), normalize(ex * Expr::fn(FnKind::Sin, barg)));
    } else if (a.eigen.repeated) {
        Expr ex = Expr::fn(FnKind::Exp, quad_expr(a.eigen.lambda) * T.P);
        basis.emplace_back(Expr::num(0), ex);
        basis.emplace_back(Expr::num(0), normalize(T.P * ex));
    } else {
        basis.emplace_back(Expr::num(0), Expr::fn(FnKind::Exp, quad_expr(a.eigen.lambda) * T.P));
        basis.emplace_back(Expr::num(0), Expr::fn(FnKind::Exp, quad_expr(a.eigen.mu) * T.P));
    }
    std::vector<VectorField> pushed;
    for (const auto& f : fields) {
        auto [fp, fq] = push_pair(f, T);
        pushed.push_back({fp, fq});
    }
    out.span_ok = generators_in_span(pushed, basis, params, rng);
    out.pullback_ok = pullback_check(ode, out.transformation, out.target, params, rng);
    out.solved = out.pullback_ok && out.span_ok;
    if (!out.solved) out.note = "verification failed";
    return out;
}

LinearizationResult linearize(const std::vector<VectorField>& fields, int N, const OdeSpec& ode,
                              const ParameterTable& params, Rng& rng, bool force) {
    LinearizationResult out;
    std::string bad;
    for (size_t i = 0; i < fields.size(); ++i)
        if (!is_symmetry(fields[i], ode, params, rng)) {
            if (!bad.empty()) bad += ", ";
            bad += "generator " + std::to_string(i + 1);
        }
    if (!bad.empty() && !force) {
        out.tag = {CaseKind::NotCovered, N, bad + " failed the symmetry check"};
        out.note = "refused: not a symmetry algebra of the equation (use force to override)";
        return out;
    }
    if (!bad.empty()) out.note = "warning: " + bad + " failed the symmetry check";

    CaseTag tag = classify(fields, N, params, rng);
    if (tag.kind == CaseKind::NotCovered) {
        out.tag = tag;
        return out;
    }
    if (N < 3) {
        out.tag = tag;
        out.note = "classification only: the linearization construction requires order N >= 3";
        return out;
    }
    std::string warn = out.note;
    try {
        switch (tag.kind) {
            case CaseKind::MaximalSymmetry:
                out = linearize_maximal(fields, N, ode, params, rng);
                break;
            case CaseKind::Solvable4:
                out = linearize_dim4(fields, ode, params, rng);
                break;
            default:
                out = linearize_dim5(fields, ode, params, rng);
                break;
        }
    } catch (const FieldError& e) {
        out = {};
        out.tag = {CaseKind::NotCovered, N, e.message};
        return out;
    } catch (const LieError& e) {
        out = {};
        out.tag = {CaseKind::NotCovered, N, e.message};
        return out;
    }
    if (!warn.empty()) out.note = out.note.empty() ? warn : warn + "; " + out.note;
    return out;
}

}  // namespace linsym
