#include "linsym/liealg.hpp"

#include <algorithm>
#include <map>

namespace linsym {

namespace {

Expr quad_to_expr(const Quad& q) {
    Expr out = Expr::num(q.a);
    if (q.b != 0)
        out = out + Expr::num(q.b) * Expr::pow(Expr::num(Rational(q.d)),
                                               Expr::num(Rational(1, 2)));
    return normalize(out);
}

void merge_disc(long long& disc, long long d) {
    if (d == 0) return;
    if (disc == 0) disc = d;
    else if (disc != d)
        throw LieError{"mixed quadratic extensions sqrt(" + std::to_string(disc) + ") and sqrt(" +
                       std::to_string(d) + ")"};
}

// (rational coefficient, monomial) terms of a normalized expression
std::vector<std::pair<Rational, Expr>> terms_of(const Expr& e) {
    std::vector<std::pair<Rational, Expr>> out;
    auto one_term = [&](const Expr& t) {
        if (t.kind() == NodeKind::Num) {
            out.emplace_back(t.value(), Expr::num(1L));
        } else if (t.kind() == NodeKind::Mul && t.kids()[0].kind() == NodeKind::Num) {
            ExprList rest(t.kids().begin() + 1, t.kids().end());
            out.emplace_back(t.kids()[0].value(),
                             rest.size() == 1 ? rest[0] : Expr::mul(std::move(rest)));
        } else {
            out.emplace_back(Rational(1), t);
        }
    };
    if (e.is_zero_literal()) return out;
    if (e.kind() == NodeKind::Add) {
        for (const auto& t : e.kids()) one_term(t);
    } else {
        one_term(e);
    }
    return out;
}

// Pull surd factors q^(p/2) (q a positive rational, p odd) out of a monomial,
// returning the Quad scale and the surd-free residual monomial.
std::pair<Quad, Expr> strip_surd(const Expr& mono, long long& disc) {
    ExprList keep;
    Rational scale(1);
    bool surd = false;
    long long d0 = 0;
    auto handle = [&](const Expr& f) {
        if (f.kind() == NodeKind::Pow && f.kids()[0].kind() == NodeKind::Num &&
            f.kids()[1].kind() == NodeKind::Num && den(f.kids()[1].value()) == 2 &&
            f.kids()[0].value() > 0) {
            Rational q = f.kids()[0].value();
            Int p = num(f.kids()[1].value());
            scale *= rational_pow(q, ((p - 1) / 2).convert_to<long>());
            // sqrt(q) = sqrt(n*m)/m for q = n/m
            Rational sq(1);
            Int nm = num(q) * den(q);
            long long df = squarefree_part(nm, sq);
            scale *= sq / Rational(den(q));
            if (df != 1) {
                if (surd) {
                    // sqrt(d0)*sqrt(df): combine
                    Rational sq2(1);
                    long long both = squarefree_part(Int(d0) * Int(df), sq2);
                    scale *= sq2;
                    d0 = both;
                    surd = both != 1;
                } else {
                    surd = true;
                    d0 = df;
                }
            }
            return;
        }
        keep.push_back(f);
    };
    if (mono.kind() == NodeKind::Mul) {
        for (const auto& f : mono.kids()) handle(f);
    } else {
        handle(mono);
    }
    Expr base = keep.empty() ? Expr::num(1L)
                             : (keep.size() == 1 ? keep[0] : normalize(Expr::mul(std::move(keep))));
    if (!surd) return {Quad(scale), base};
    merge_disc(disc, d0);
    return {Quad(Rational(0), scale, d0), base};
}

struct MonoKey {
    int component;  // 0 = xi, 1 = eta
    Expr mono;
    bool operator<(const MonoKey& o) const {
        if (component != o.component) return component < o.component;
        return compare(mono, o.mono) < 0;
    }
};

using FieldVec = std::map<MonoKey, Quad>;

FieldVec expand_field(const VectorField& f, long long& disc) {
    FieldVec v;
    int comp = 0;
    for (const Expr* e : {&f.xi, &f.eta}) {
        for (auto& [r, mono] : terms_of(normalize(*e))) {
            auto [q, base] = strip_surd(mono, disc);
            Quad entry = q * Quad(r);
            MonoKey key{comp, base};
            auto it = v.find(key);
            if (it == v.end()) v.emplace(key, entry);
            else it->second += entry;
        }
        ++comp;
    }
    for (auto it = v.begin(); it != v.end();)
        it = it->second.is_zero() ? v.erase(it) : std::next(it);
    return v;
}

}  // namespace

QVec LieAlgebraStructure::bracket_vec(const QVec& u, const QVec& v) const {
    QVec out(n, Quad(0));
    for (size_t i = 0; i < n; ++i) {
        if (u[i].is_zero()) continue;
        for (size_t j = 0; j < n; ++j) {
            if (v[j].is_zero()) continue;
            Quad f = u[i] * v[j];
            for (size_t k = 0; k < n; ++k) out[k] += f * c[i][j][k];
        }
    }
    return out;
}

QMat LieAlgebraStructure::ad(const QVec& u) const {
    QMat m = qmat_zero(n, n);
    for (size_t j = 0; j < n; ++j) {
        QVec ej(n, Quad(0));
        ej[j] = Quad(1);
        QVec col = bracket_vec(u, ej);
        for (size_t i = 0; i < n; ++i) m[i][j] = col[i];
    }
    return m;
}

void LieAlgebraStructure::verify() const {
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (c[i][j][k] != -c[j][i][k])
                    throw LieError{"structure constants are not antisymmetric"};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                QVec ei(n, Quad(0)), ej(n, Quad(0)), ek(n, Quad(0));
                ei[i] = ej[j] = ek[k] = Quad(1);
                QVec s = bracket_vec(ei, c[j][k]);
                QVec t = bracket_vec(ej, c[k][i]);
                QVec u = bracket_vec(ek, c[i][j]);
                for (size_t m = 0; m < n; ++m)
                    if (!(s[m] + t[m] + u[m]).is_zero())
                        throw LieError{"Jacobi identity fails on basis triple"};
            }
}

VectorField LieAlgebraStructure::realize(const QVec& u) const {
    if (fields.empty()) throw LieError{"algebra has no vector-field realization"};
    Expr xi = Expr::num(0L), eta = Expr::num(0L);
    for (size_t i = 0; i < n; ++i) {
        if (u[i].is_zero()) continue;
        Expr coef = quad_to_expr(u[i]);
        xi = xi + coef * fields[i].xi;
        eta = eta + coef * fields[i].eta;
    }
    return {normalize(xi), normalize(eta)};
}

Subspace span_of(std::vector<QVec> vectors) {
    vectors.erase(std::remove_if(vectors.begin(), vectors.end(), qvec_is_zero), vectors.end());
    if (vectors.empty()) return {};
    return qmat_rowspace(std::move(vectors));
}

bool subspace_contains(const Subspace& s, const QVec& v) {
    if (qvec_is_zero(v)) return true;
    QMat m = s;
    m.push_back(v);
    return qmat_rank(std::move(m)) == s.size();
}

bool subspace_equal(const Subspace& s, const Subspace& t) {
    if (s.size() != t.size()) return false;
    for (const auto& v : t)
        if (!subspace_contains(s, v)) return false;
    return true;
}

LieAlgebraStructure structure_constants(const std::vector<VectorField>& fields,
                                        const ParameterTable& params, Rng& rng) {
    size_t n = fields.size();
    LieAlgebraStructure L;
    L.n = n;
    L.fields = fields;
    for (size_t i = 0; i < n; ++i) L.labels.push_back("e" + std::to_string(i + 1));

    auto binds = params.sample_bindings();
    std::vector<VectorField> at_sample;
    for (const auto& f : fields)
        at_sample.push_back({substitute(f.xi, binds), substitute(f.eta, binds)});

    long long disc = 0;
    std::vector<FieldVec> vecs;
    for (const auto& f : at_sample) vecs.push_back(expand_field(f, disc));

    std::vector<std::vector<VectorField>> bfields(n, std::vector<VectorField>(n));
    std::vector<std::vector<FieldVec>> bvecs(n, std::vector<FieldVec>(n));
    std::set<MonoKey> keyset;
    for (const auto& v : vecs)
        for (const auto& [k, q] : v) keyset.insert(k);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            bfields[i][j] = bracket(at_sample[i], at_sample[j]);
            bvecs[i][j] = expand_field(bfields[i][j], disc);
            for (const auto& [k, q] : bvecs[i][j]) keyset.insert(k);
        }
    L.disc = disc;

    std::map<MonoKey, size_t> row_of;
    for (const auto& k : keyset) row_of.emplace(k, row_of.size());

    QMat M = qmat_zero(row_of.size(), n);
    for (size_t j = 0; j < n; ++j)
        for (const auto& [k, q] : vecs[j]) M[row_of.at(k)][j] = q;
    if (qmat_rank(M) != n) throw LieError{"generators are linearly dependent"};

    L.c.assign(n, std::vector<QVec>(n, QVec(n, Quad(0))));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            QVec w(row_of.size(), Quad(0));
            for (const auto& [k, q] : bvecs[i][j]) w[row_of.at(k)] = q;
            auto sol = qmat_solve(M, w);
            if (!sol)
                throw LieError{"bracket [" + L.labels[i] + "," + L.labels[j] +
                               "] does not close in the span"};
            // re-expansion residual, verified independently of the monomial matching
            Expr rxi = bfields[i][j].xi, reta = bfields[i][j].eta;
            for (size_t k = 0; k < n; ++k) {
                Expr coef = quad_to_expr((*sol)[k]);
                rxi = rxi - coef * at_sample[k].xi;
                reta = reta - coef * at_sample[k].eta;
            }
            if (!is_zero(rxi, params, rng) || !is_zero(reta, params, rng))
                throw LieError{"bracket [" + L.labels[i] + "," + L.labels[j] +
                               "] re-expansion residual is nonzero"};
            L.c[i][j] = *sol;
            for (size_t k = 0; k < n; ++k) L.c[j][i][k] = -(*sol)[k];
        }
    L.verify();
    return L;
}

Subspace derived_algebra(const LieAlgebraStructure& L) {
    std::vector<QVec> gens;
    for (size_t i = 0; i < L.n; ++i)
        for (size_t j = i + 1; j < L.n; ++j) gens.push_back(L.c[i][j]);
    return span_of(std::move(gens));
}

Subspace centralizer(const LieAlgebraStructure& L, const QVec& w, const Subspace& A) {
    if (A.empty()) return {};
    // rows: bracket of each A-basis vector with w; nullspace in A-coordinates
    QMat m = qmat_zero(L.n, A.size());
    for (size_t t = 0; t < A.size(); ++t) {
        QVec col = L.bracket_vec(A[t], w);
        for (size_t i = 0; i < L.n; ++i) m[i][t] = col[i];
    }
    std::vector<QVec> out;
    for (const auto& coords : qmat_nullspace(m)) {
        QVec v(L.n, Quad(0));
        for (size_t t = 0; t < A.size(); ++t)
            for (size_t i = 0; i < L.n; ++i) v[i] += coords[t] * A[t][i];
        out.push_back(std::move(v));
    }
    return span_of(std::move(out));
}

QMat killing_form(const LieAlgebraStructure& L) {
    std::vector<QMat> ads;
    for (size_t i = 0; i < L.n; ++i) {
        QVec ei(L.n, Quad(0));
        ei[i] = Quad(1);
        ads.push_back(L.ad(ei));
    }
    QMat K = qmat_zero(L.n, L.n);
    for (size_t i = 0; i < L.n; ++i)
        for (size_t j = i; j < L.n; ++j) {
            QMat p = qmat_mul(ads[i], ads[j]);
            Quad tr(0);
            for (size_t k = 0; k < L.n; ++k) tr += p[k][k];
            K[i][j] = K[j][i] = tr;
        }
    return K;
}

namespace {

Subspace bracket_span(const LieAlgebraStructure& L, const Subspace& S, const Subspace& T) {
    std::vector<QVec> gens;
    for (const auto& u : S)
        for (const auto& v : T) gens.push_back(L.bracket_vec(u, v));
    return span_of(std::move(gens));
}

}  // namespace

Subspace radical(const LieAlgebraStructure& L) {
    Subspace derived = derived_algebra(L);
    QMat K = killing_form(L);
    // x with K(x, d) = 0 for all d in the derived algebra
    QMat sys;
    for (const auto& d : derived) sys.push_back(qmat_apply(K, d));
    Subspace rad = sys.empty() ? [&] {
        Subspace all;
        for (size_t i = 0; i < L.n; ++i) {
            QVec e(L.n, Quad(0));
            e[i] = Quad(1);
            all.push_back(e);
        }
        return all;
    }()
                               : span_of(qmat_nullspace(sys));
    // verification: solvable ideal
    for (size_t i = 0; i < L.n; ++i) {
        QVec e(L.n, Quad(0));
        e[i] = Quad(1);
        for (const auto& r : rad)
            if (!subspace_contains(rad, L.bracket_vec(e, r)))
                throw LieError{"computed radical is not an ideal"};
    }
    Subspace s = rad;
    for (size_t guard = 0; guard <= L.n; ++guard) {
        if (s.empty()) return rad;
        Subspace next = bracket_span(L, s, s);
        if (next.size() >= s.size()) break;
        s = next;
    }
    throw LieError{"computed radical is not solvable"};
}

namespace {

// coordinates of v in the column basis B (must be solvable)
QVec coords_in(const std::vector<QVec>& basis, const QVec& v, size_t dim) {
    QMat m = qmat_zero(dim, basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < dim; ++i) m[i][j] = basis[j][i];
    auto sol = qmat_solve(m, v);
    if (!sol) throw LieError{"vector outside expected span"};
    return *sol;
}

}  // namespace

LeviDecomposition levi_decomposition(const LieAlgebraStructure& L) {
    LeviDecomposition out;
    out.radical = radical(L);
    size_t r = out.radical.size();
    if (r == L.n) return out;

    // complement candidates: standard basis vectors extending the radical
    std::vector<QVec> x;
    {
        QMat m = out.radical;
        for (size_t i = 0; i < L.n && m.size() < L.n; ++i) {
            QVec e(L.n, Quad(0));
            e[i] = Quad(1);
            QMat probe = m;
            probe.push_back(e);
            if (qmat_rank(probe) > qmat_rank(m)) {
                m.push_back(e);
                x.push_back(e);
            }
        }
    }
    size_t s = x.size();

    // quotient structure constants relative to the chosen section
    std::vector<QVec> full = out.radical;
    full.insert(full.end(), x.begin(), x.end());
    auto quotient_coords = [&](const QVec& v) {
        QVec all = coords_in(full, v, L.n);
        return QVec(all.begin() + static_cast<long>(r), all.end());
    };
    std::vector<std::vector<QVec>> cq(s, std::vector<QVec>(s));
    for (size_t a = 0; a < s; ++a)
        for (size_t b = 0; b < s; ++b) cq[a][b] = quotient_coords(L.bracket_vec(x[a], x[b]));

    // correct the section through the derived series of the radical
    std::vector<Subspace> series{out.radical};
    while (!series.back().empty()) {
        Subspace next = bracket_span(L, series.back(), series.back());
        if (next.size() == series.back().size())
            throw LieError{"radical derived series does not terminate"};
        series.push_back(next);
    }

    for (size_t stage = 0; stage + 1 < series.size(); ++stage) {
        const Subspace& ri = series[stage];
        const Subspace& rnext = series[stage + 1];
        if (ri.empty()) break;
        // unknowns: u_a in r_i for each section element
        size_t m = ri.size();
        size_t unknowns = s * m;
        // equations: for each pair (a,b), [x_a+u_a, x_b+u_b] - sum cq (x_g+u_g) = 0 mod r_{i+1}
        // projection mod r_{i+1}: coordinates in (r_{i+1} basis + extension) with the
        // extension components kept
        std::vector<QVec> proj_basis = rnext;
        std::vector<size_t> kept;
        {
            QMat mm = rnext;
            for (size_t i = 0; i < L.n && mm.size() < L.n; ++i) {
                QVec e(L.n, Quad(0));
                e[i] = Quad(1);
                QMat probe = mm;
                probe.push_back(e);
                if (qmat_rank(probe) > qmat_rank(mm)) {
                    mm.push_back(e);
                    proj_basis.push_back(e);
                    kept.push_back(proj_basis.size() - 1);
                }
            }
        }
        auto project = [&](const QVec& v) {
            QVec all = coords_in(proj_basis, v, L.n);
            QVec out_p;
            for (size_t k : kept) out_p.push_back(all[k]);
            return out_p;
        };
        size_t p = kept.size();

        QMat sys;
        QVec rhs;
        for (size_t a = 0; a < s; ++a)
            for (size_t b = a + 1; b < s; ++b) {
                // constant: [x_a, x_b] - sum_g cq^g x_g
                QVec cst = L.bracket_vec(x[a], x[b]);
                for (size_t g = 0; g < s; ++g)
                    for (size_t i = 0; i < L.n; ++i) cst[i] -= cq[a][b][g] * x[g][i];
                QVec cstp = project(cst);
                // coefficient of t_{c,m}: [x_a, r_m] delta_{c,b} - [x_b, r_m] delta_{c,a}
                //                         - cq^c_{ab} r_m
                for (size_t row = 0; row < p; ++row) {
                    QVec eq(unknowns, Quad(0));
                    for (size_t g = 0; g < s; ++g)
                        for (size_t mm = 0; mm < m; ++mm) {
                            QVec contrib(L.n, Quad(0));
                            if (g == b) {
                                QVec t = L.bracket_vec(x[a], ri[mm]);
                                for (size_t i = 0; i < L.n; ++i) contrib[i] += t[i];
                            }
                            if (g == a) {
                                QVec t = L.bracket_vec(x[b], ri[mm]);
                                for (size_t i = 0; i < L.n; ++i) contrib[i] -= t[i];
                            }
                            for (size_t i = 0; i < L.n; ++i)
                                contrib[i] -= cq[a][b][g] * ri[mm][i];
                            if (!qvec_is_zero(contrib)) eq[g * m + mm] = project(contrib)[row];
                        }
                    sys.push_back(std::move(eq));
                    rhs.push_back(-cstp[row]);
                }
            }
        auto sol = qmat_solve(sys, rhs);
        if (!sol) throw LieError{"Levi lifting system is singular"};
        for (size_t a = 0; a < s; ++a)
            for (size_t mm = 0; mm < m; ++mm)
                for (size_t i = 0; i < L.n; ++i) x[a][i] += (*sol)[a * m + mm] * ri[mm][i];
    }

    // verify: subalgebra with nondegenerate Killing form
    Subspace levi = span_of(x);
    if (levi.size() != s) throw LieError{"Levi lifting degenerated"};
    for (size_t a = 0; a < s; ++a)
        for (size_t b = a + 1; b < s; ++b)
            if (!subspace_contains(levi, L.bracket_vec(x[a], x[b])))
                throw LieError{"lifted Levi section is not a subalgebra"};
    QMat K = killing_form(L);
    QMat Ks = qmat_zero(s, s);
    for (size_t a = 0; a < s; ++a)
        for (size_t b = 0; b < s; ++b) Ks[a][b] = qvec_dot(x[a], qmat_apply(K, x[b]));
    if (qmat_det(Ks).is_zero()) throw LieError{"Killing form degenerate on the Levi part"};
    out.levi = x;  // keep the lifted (unreduced) basis: it is already independent
    return out;
}

namespace {

// structure constants of a subalgebra in its own basis
LieAlgebraStructure restrict_to(const LieAlgebraStructure& L, const Subspace& S) {
    LieAlgebraStructure R;
    R.n = S.size();
    R.disc = L.disc;
    for (size_t i = 0; i < R.n; ++i) R.labels.push_back("f" + std::to_string(i + 1));
    R.c.assign(R.n, std::vector<QVec>(R.n));
    for (size_t i = 0; i < R.n; ++i)
        for (size_t j = 0; j < R.n; ++j)
            R.c[i][j] = coords_in(S, L.bracket_vec(S[i], S[j]), L.n);
    return R;
}

bool is_nilpotent(const QMat& m) {
    QMat p = m;
    for (size_t k = 1; k < m.size(); ++k) p = qmat_mul(p, m);
    for (const auto& row : p)
        for (const auto& q : row)
            if (!q.is_zero()) return false;
    return true;
}

}  // namespace

Sl2Triple sl2_standard_triple(const LieAlgebraStructure& L, const Subspace& levi) {
    if (levi.size() != 3)
        throw LieError{"Levi complement is not 3-dimensional"};
    LieAlgebraStructure R = restrict_to(L, levi);

    // deterministic search for a nonzero ad-nilpotent element with small coords
    QVec xc;
    for (long norm = 1; norm <= 9 && xc.empty(); ++norm) {
        for (long c0 = -3; c0 <= 3 && xc.empty(); ++c0)
            for (long c1 = -3; c1 <= 3 && xc.empty(); ++c1)
                for (long c2 = -3; c2 <= 3 && xc.empty(); ++c2) {
                    if (std::abs(c0) + std::abs(c1) + std::abs(c2) != norm) continue;
                    QVec v{Quad(c0), Quad(c1), Quad(c2)};
                    QMat m = R.ad(v);
                    bool zero = true;
                    for (const auto& row : m)
                        for (const auto& q : row)
                            if (!q.is_zero()) zero = false;
                    if (!zero && is_nilpotent(m)) xc = v;
                }
    }
    if (xc.empty())
        throw LieError{"Levi complement not split: no rational nilpotent element found"};

    QMat adX = R.ad(xc);
    // H = ad(X) z with ad(X) H = -2X  =>  ad(X)^2 z = -2X
    QMat adX2 = qmat_mul(adX, adX);
    QVec target{-Quad(2) * xc[0], -Quad(2) * xc[1], -Quad(2) * xc[2]};
    auto z = qmat_solve(adX2, target);
    if (!z) throw LieError{"sl(2) normalization: no solution for H"};
    QVec hc = qmat_apply(adX, *z);

    // Y from [X,Y] = H and [H,Y] = -2Y
    QMat adH = R.ad(hc);
    QMat sys = qmat_zero(6, 3);
    QVec rhs(6, Quad(0));
    for (size_t i = 0; i < 3; ++i) {
        for (size_t j = 0; j < 3; ++j) {
            sys[i][j] = adX[i][j];
            sys[3 + i][j] = adH[i][j];
        }
        sys[3 + i][i] += Quad(2);
        rhs[i] = hc[i];
    }
    auto yc = qmat_solve(sys, rhs);
    if (!yc) throw LieError{"sl(2) normalization: no solution for Y"};

    auto rel = [&](const QVec& u, const QVec& v) { return R.bracket_vec(u, v); };
    QVec r1 = rel(xc, *yc);
    QVec r2 = rel(hc, xc);
    QVec r3 = rel(hc, *yc);
    for (size_t i = 0; i < 3; ++i) {
        if (r1[i] != hc[i] || r2[i] != Quad(2) * xc[i] || r3[i] != -Quad(2) * (*yc)[i])
            throw LieError{"sl(2) relations failed verification"};
    }

    auto lift = [&](const QVec& v) {
        QVec out(L.n, Quad(0));
        for (size_t t = 0; t < 3; ++t)
            for (size_t i = 0; i < L.n; ++i) out[i] += v[t] * levi[t][i];
        return out;
    };
    return {lift(xc), lift(*yc), lift(hc)};
}

namespace {

// rational roots of a monic polynomial with rational coefficients, with
// multiplicity, by candidate testing + synthetic deflation
std::vector<Rational> rational_roots(std::vector<Rational>& p) {
    // p[k] coeff of x^k, monic; deflates found roots out of p
    std::vector<Rational> roots;
    bool progress = true;
    while (progress && p.size() > 1) {
        progress = false;
        // clear denominators: candidates num | a0*D, den | D-ish; test small set
        // built from divisors of the constant term
        if (p[0] == 0) {
            roots.push_back(Rational(0));
            p.erase(p.begin());
            progress = true;
            continue;
        }
        Int cn = num(p[0]), cd = den(p[0]);
        Int lcm_den(1);
        for (const auto& q : p) lcm_den = boost::multiprecision::lcm(lcm_den, den(q));
        (void)cd;
        auto divisors = [](Int v) {
            if (v < 0) v = -v;
            std::vector<Int> ds;
            for (Int i = 1; i * i <= v; ++i)
                if (v % i == 0) {
                    ds.push_back(i);
                    ds.push_back(v / i);
                }
            return ds;
        };
        for (const Int& a : divisors(cn * lcm_den)) {
            for (const Int& b : divisors(lcm_den)) {
                for (int sign : {1, -1}) {
                    Rational cand = Rational(a * sign, b);
                    // Horner
                    Rational v(0);
                    for (size_t k = p.size(); k-- > 0;) v = v * cand + p[k];
                    if (v == 0) {
                        roots.push_back(cand);
                        // synthetic division by (x - cand)
                        std::vector<Rational> q(p.size() - 1, Rational(0));
                        Rational carry = p.back();
                        for (size_t k = p.size() - 1; k-- > 0;) {
                            q[k] = carry;
                            carry = p[k] + carry * cand;
                        }
                        p = std::move(q);
                        progress = true;
                        break;
                    }
                }
                if (progress) break;
            }
            if (progress) break;
        }
    }
    return roots;
}

}  // namespace

std::vector<EigenComponent> adjoint_eigen(const LieAlgebraStructure& L, const QVec& h,
                                          const Subspace& W) {
    size_t k = W.size();
    QMat M = qmat_zero(k, k);
    for (size_t j = 0; j < k; ++j) {
        QVec img = L.bracket_vec(h, W[j]);
        if (!subspace_contains(W, img))
            throw LieError{"subspace is not invariant under ad(h)"};
        QVec co = coords_in(W, img, L.n);
        for (size_t i = 0; i < k; ++i) M[i][j] = co[i];
    }
    QVec cp = qmat_charpoly(M);
    std::vector<Rational> p;
    for (const auto& q : cp) {
        if (!q.is_rational())
            throw LieError{"characteristic polynomial has irrational coefficients — unsupported"};
        p.push_back(q.a);
    }

    std::vector<Rational> rat = rational_roots(p);
    std::vector<EigenComponent> out;
    long long disc = L.disc;

    auto lift = [&](const QVec& coords) {
        QVec v(L.n, Quad(0));
        for (size_t t = 0; t < k; ++t)
            for (size_t i = 0; i < L.n; ++i) v[i] += coords[t] * W[t][i];
        return v;
    };
    auto real_eigenspace = [&](const Quad& lam) {
        QMat A = M;
        for (size_t i = 0; i < k; ++i) A[i][i] -= lam;
        Subspace vecs;
        for (const auto& nv : qmat_nullspace(A)) vecs.push_back(lift(nv));
        return span_of(std::move(vecs));
    };

    std::sort(rat.begin(), rat.end());
    rat.erase(std::unique(rat.begin(), rat.end()), rat.end());
    for (const auto& r : rat)
        out.push_back({Quad(r), Quad(0), real_eigenspace(Quad(r))});

    if (p.size() - 1 >= 3)
        throw LieError{"characteristic polynomial has an irreducible factor of degree >= 3"};
    if (p.size() - 1 == 2) {
        // monic quadratic x^2 + b x + c
        Rational b = p[1] / p[2], cc = p[0] / p[2];
        Quad half_b = Quad(b / 2);
        Quad discq = Quad(b * b / 4 - cc);
        auto root = quad_sqrt(discq, disc);
        if (!root) throw LieError{"quadratic eigenvalues outside the declared field"};
        auto [re_part, im_part] = *root;
        if (im_part.is_zero()) {
            // two real quadratic-irrational eigenvalues
            for (int sign : {1, -1}) {
                Quad lam = -half_b + (sign > 0 ? re_part : -re_part);
                out.push_back({lam, Quad(0), real_eigenspace(lam)});
            }
        } else {
            // conjugate pair -b/2 +- i*im: invariant plane = ker(M^2 + bM + cI)
            QMat A = qmat_mul(M, M);
            for (size_t i = 0; i < k; ++i) {
                for (size_t j = 0; j < k; ++j) A[i][j] += Quad(b) * M[i][j];
                A[i][i] += Quad(cc);
            }
            Subspace vecs;
            for (const auto& nv : qmat_nullspace(A)) vecs.push_back(lift(nv));
            out.push_back({-half_b, im_part, span_of(std::move(vecs))});
        }
    }
    return out;
}

std::optional<Subspace> abelian_complement(const LieAlgebraStructure& L) {
    Subspace derived = derived_algebra(L);
    if (derived.size() + 2 != L.n) throw LieError{"derived algebra does not have codimension 2"};
    for (const auto& u : derived)
        for (const auto& v : derived)
            if (!qvec_is_zero(L.bracket_vec(u, v)))
                throw LieError{"derived algebra is not abelian"};

    // section: two standard basis vectors extending the derived algebra
    std::vector<QVec> e;
    {
        QMat m = derived;
        for (size_t i = 0; i < L.n && e.size() < 2; ++i) {
            QVec cand(L.n, Quad(0));
            cand[i] = Quad(1);
            QMat probe = m;
            probe.push_back(cand);
            if (qmat_rank(probe) > qmat_rank(m)) {
                m.push_back(cand);
                e.push_back(cand);
            }
        }
    }
    // [e1+u, e2+v] = [e1,e2] + [e1,v] - [e2,u] = 0, u,v in derived (abelian)
    size_t m = derived.size();
    QMat sys = qmat_zero(L.n, 2 * m);
    for (size_t t = 0; t < m; ++t) {
        QVec c1 = L.bracket_vec(e[0], derived[t]);  // coefficient of v_t
        QVec c2 = L.bracket_vec(e[1], derived[t]);  // coefficient of u_t (negated)
        for (size_t i = 0; i < L.n; ++i) {
            sys[i][m + t] = c1[i];
            sys[i][t] = -c2[i];
        }
    }
    QVec rhs = L.bracket_vec(e[1], e[0]);  // -( [e1,e2] )
    auto sol = qmat_solve(sys, rhs);
    if (!sol) return std::nullopt;
    QVec a = e[0], b = e[1];
    for (size_t t = 0; t < m; ++t)
        for (size_t i = 0; i < L.n; ++i) {
            a[i] += (*sol)[t] * derived[t][i];
            b[i] += (*sol)[m + t] * derived[t][i];
        }
    return Subspace{a, b};
}

}  // namespace linsym
