#include "linsym/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace linsym {

Expr apply_field(const VectorField& A, const Expr& f) {
    return A.xi * differentiate(f, "x") + A.eta * differentiate(f, "y");
}

VectorField bracket(const VectorField& A, const VectorField& B) {
    return {apply_field(A, B.xi) - apply_field(B, A.xi),
            apply_field(A, B.eta) - apply_field(B, A.eta)};
}

namespace {

int highest_jet(const Expr& e) {
    std::set<std::string> syms;
    free_symbols(e, syms);
    int h = 0;
    for (const auto& s : syms) {
        if (s.size() < 2 || s[0] != 'y') continue;
        bool digits = true;
        for (size_t i = 1; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
        if (digits) h = std::max(h, std::stoi(s.substr(1)));
    }
    return h;
}

}  // namespace

Expr total_derivative(const Expr& e) {
    Expr out = differentiate(e, "x");
    int h = highest_jet(e);
    for (int k = 0; k <= h; ++k)
        out = out + Expr::sym(jet_name(k + 1)) * differentiate(e, jet_name(k));
    return out;
}

ProlongedField prolong(const VectorField& A, int N) {
    ProlongedField p{N, {normalize(A.xi), normalize(A.eta)}};
    Expr dxi = total_derivative(p.coeff[0]);
    for (int k = 0; k < N; ++k) {
        // eta^(k+1) = D_x(eta^(k)) - y_{k+1} * D_x(xi)
        Expr next = total_derivative(p.coeff[k + 1]) - Expr::sym(jet_name(k + 1)) * dxi;
        p.coeff.push_back(next);
    }
    return p;
}

Expr apply_prolonged(const ProlongedField& A, const Expr& f) {
    Expr out = A.coeff[0] * differentiate(f, "x");
    for (int k = 0; k <= A.order; ++k)
        out = out + A.coeff[k + 1] * differentiate(f, jet_name(k));
    return out;
}

ZeroTest is_symmetry_test(const VectorField& A, const OdeSpec& ode, const ParameterTable& params,
                          Rng& rng) {
    ProlongedField p = prolong(A, ode.order);
    Expr surface = Expr::sym(jet_name(ode.order)) - ode.rhs;
    Expr applied = apply_prolonged(p, surface);
    Expr on_surface = substitute(applied, {{jet_name(ode.order), ode.rhs}});
    return is_zero_test(clear_denominators(on_surface), params, rng);
}

bool is_symmetry(const VectorField& A, const OdeSpec& ode, const ParameterTable& params, Rng& rng) {
    return is_symmetry_test(A, ode, params, rng).zero();
}

namespace {

// Coefficient matrix of the fields prolonged to jet_order: one row per field,
// columns d/dx, d/dy, d/dy', ..., d/dy^(jet_order).
std::vector<ExprList> coefficient_matrix(const std::vector<VectorField>& fields, int jet_order) {
    std::vector<ExprList> rows;
    for (const auto& f : fields) {
        if (jet_order == 0) {
            rows.push_back({normalize(f.xi), normalize(f.eta)});
        } else {
            rows.push_back(prolong(f, jet_order).coeff);
        }
    }
    return rows;
}

int numeric_rank(std::vector<std::vector<double>> m) {
    size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    double scale = 1.0;
    for (auto& r : m)
        for (double v : r) scale = std::max(scale, std::fabs(v));
    double tol = 1e-9 * scale;
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        for (size_t r = row + 1; r < rows; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) <= tol) continue;
        std::swap(m[piv], m[row]);
        for (size_t r = row + 1; r < rows; ++r) {
            double f = m[r][col] / m[row][col];
            for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace

int generic_rank(const std::vector<VectorField>& fields, int jet_order,
                 const ParameterTable& params, Rng& rng) {
    if (fields.empty()) throw FieldError{"generic_rank needs at least one field"};
    auto rows = coefficient_matrix(fields, jet_order);
    auto binds = params.sample_bindings();
    for (auto& r : rows)
        for (auto& e : r) e = substitute(e, binds);

    std::set<std::string> syms;
    for (const auto& r : rows)
        for (const auto& e : r) free_symbols(e, syms);
    for (const auto& s : syms)
        if (params.declared(s)) throw FieldError{"parameter '" + s + "' has no sample value"};

    int best = 0, good = 0;
    for (int attempt = 0; attempt < 200 && good < 8; ++attempt) {
        std::map<std::string, double> pt;
        for (const auto& s : syms) pt[s] = to_double(random_sample(rng, attempt % 2 == 1));
        try {
            std::vector<std::vector<double>> m;
            for (const auto& r : rows) {
                std::vector<double> row;
                for (const auto& e : r) row.push_back(eval_numeric(e, pt));
                m.push_back(std::move(row));
            }
            best = std::max(best, numeric_rank(std::move(m)));
            ++good;
        } catch (const EvalError&) {
        }
    }
    if (good == 0) throw FieldError{"all rank sample points were singular"};
    return best;
}

namespace {

Expr det_expr(const std::vector<ExprList>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    Expr out = Expr::num(0L);
    for (size_t i = 0; i < n; ++i) {
        if (m[i][0].is_zero_literal()) continue;
        std::vector<ExprList> minor;
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            minor.emplace_back(m[r].begin() + 1, m[r].end());
        }
        Expr term = m[i][0] * det_expr(minor);
        out = (i % 2 == 0) ? out + term : out - term;
    }
    return out;
}

}  // namespace

Expr singular_locus(const std::vector<VectorField>& fields, int jet_order) {
    if (static_cast<int>(fields.size()) != jet_order + 1)
        throw FieldError{"singular locus needs exactly jet_order + 1 fields"};
    auto rows = coefficient_matrix(fields, jet_order);
    size_t cols = rows[0].size();
    std::vector<size_t> keep;
    for (size_t c = 0; c < cols; ++c) {
        bool all_zero = true;
        for (const auto& r : rows)
            if (!r[c].is_zero_literal()) all_zero = false;
        if (!all_zero) keep.push_back(c);
    }
    if (keep.size() != rows.size())
        throw FieldError{"coefficient matrix is not square after dropping zero columns"};
    std::vector<ExprList> m;
    for (const auto& r : rows) {
        ExprList row;
        for (size_t c : keep) row.push_back(r[c]);
        m.push_back(std::move(row));
    }
    return normalize(det_expr(m));
}

Expr jacobian(const PointTransformation& T) {
    return differentiate(T.P, "x") * differentiate(T.Q, "y") -
           differentiate(T.P, "y") * differentiate(T.Q, "x");
}

PushforwardResult pushforward(const VectorField& A, const PointTransformation& T) {
    Expr nxi = apply_field(A, T.P);
    Expr neta = apply_field(A, T.Q);
    if (!T.inverse) return {{nxi, neta}, true};
    std::map<std::string, Expr> back{{"x", T.inverse->first}, {"y", T.inverse->second}};
    return {{substitute(nxi, back), substitute(neta, back)}, false};
}

std::vector<Expr> transformed_jets(const PointTransformation& T, int N) {
    Expr dP = total_derivative(T.P);
    if (normalize(dP).is_zero_literal()) throw FieldError{"transformation has D_x(P) = 0"};
    std::vector<Expr> out{dP};
    Expr cur = total_derivative(T.Q) / dP;
    out.push_back(cur);
    for (int k = 2; k <= N; ++k) {
        cur = total_derivative(cur) / dP;
        out.push_back(cur);
    }
    return out;
}

Expr clear_denominators(const Expr& e0) {
    Expr e = normalize(e0);
    if (e.kind() != NodeKind::Add && e.kind() != NodeKind::Mul && e.kind() != NodeKind::Pow)
        return e;
    // collect, per base, the most negative integer exponent appearing anywhere
    std::map<Expr, Rational, ExprLess> worst;
    auto scan_factor = [&](const Expr& f) {
        if (f.kind() == NodeKind::Pow && f.kids()[1].kind() == NodeKind::Num &&
            f.kids()[1].value() < 0) {
            const Expr& b = f.kids()[0];
            const Rational& x = f.kids()[1].value();
            auto it = worst.find(b);
            if (it == worst.end()) worst.emplace(b, x);
            else it->second = std::min(it->second, x);
        }
    };
    auto scan_term = [&](const Expr& t) {
        if (t.kind() == NodeKind::Mul) {
            for (const auto& f : t.kids()) scan_factor(f);
        } else {
            scan_factor(t);
        }
    };
    if (e.kind() == NodeKind::Add) {
        for (const auto& t : e.kids()) scan_term(t);
    } else {
        scan_term(e);
    }
    if (worst.empty()) return e;
    std::map<Expr, Rational, ExprLess> raise;
    for (const auto& [b, x] : worst) {
        Rational up = -x;
        if (!is_integer(up)) up = Rational(Int(num(up) / den(up)) + 1);
        raise.emplace(b, up);
    }
    // multiply term by term, merging exponents directly so matching powers
    // cancel without a global expansion
    auto boost_term = [&](const Expr& t) {
        auto need = raise;
        ExprList fs;
        auto take = [&](const Expr& f) {
            if (f.kind() == NodeKind::Pow && f.kids()[1].kind() == NodeKind::Num) {
                auto it = need.find(f.kids()[0]);
                if (it != need.end()) {
                    Rational k = f.kids()[1].value() + it->second;
                    need.erase(it);
                    if (k != 0) fs.push_back(Expr::pow(f.kids()[0], Expr::num(k)));
                    return;
                }
            }
            fs.push_back(f);
        };
        if (t.kind() == NodeKind::Mul) {
            for (const auto& f : t.kids()) take(f);
        } else {
            take(t);
        }
        for (const auto& [b, up] : need) fs.push_back(Expr::pow(b, Expr::num(up)));
        return normalize(Expr::mul(std::move(fs)));
    };
    if (e.kind() == NodeKind::Add) {
        ExprList terms;
        terms.reserve(e.kids().size());
        for (const auto& t : e.kids()) terms.push_back(boost_term(t));
        return normalize(Expr::add(std::move(terms)));
    }
    return boost_term(e);
}

ZeroTest pullback_check_test(const OdeSpec& ode, const PointTransformation& T,
                             const OdeSpec& target, const ParameterTable& params, Rng& rng) {
    if (is_zero_test(clear_denominators(jacobian(T)), params, rng).zero())
        return {ZeroResult::NonZero, ZeroPath::Canonical,
                "transformation Jacobian vanishes identically"};
    auto jets = transformed_jets(T, ode.order);
    std::map<std::string, Expr> into_source{{"x", T.P}, {"y", T.Q}};
    for (int k = 1; k < target.order; ++k) into_source.emplace(jet_name(k), jets[k]);
    Expr residual = jets[target.order] - substitute(target.rhs, into_source);
    residual = substitute(residual, {{jet_name(ode.order), ode.rhs}});
    return is_zero_test(clear_denominators(residual), params, rng);
}

bool pullback_check(const OdeSpec& ode, const PointTransformation& T, const OdeSpec& target,
                    const ParameterTable& params, Rng& rng) {
    return pullback_check_test(ode, T, target, params, rng).zero();
}

OdeSpec transform_ode(const OdeSpec& target, const PointTransformation& T,
                      const ParameterTable& params, Rng& rng) {
    int N = target.order;
    auto jets = transformed_jets(T, N);
    std::map<std::string, Expr> into_source{{"x", T.P}, {"y", T.Q}};
    for (int k = 1; k < N; ++k) into_source.emplace(jet_name(k), jets[k]);
    Expr residual = jets[N] - substitute(target.rhs, into_source);
    // the equation is linear in the top source jet; solve for it
    std::string top = jet_name(N);
    Expr coeff = differentiate(residual, top);
    if (depends_on(coeff, top)) throw FieldError{"transformed equation is not linear in the top jet"};
    if (is_zero_test(clear_denominators(coeff), params, rng).zero())
        throw FieldError{"transformed equation does not determine the top jet"};
    Expr rest = substitute(residual, {{top, Expr::num(0L)}});
    return {N, normalize(Expr::num(0L) - rest / coeff)};
}

}  // namespace linsym
