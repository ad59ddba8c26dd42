#pragma once

#include "linsym/liealg.hpp"

namespace linsym {

// Pattern antiderivative in the variable `var`, treating every other symbol as
// constant. Covers sums of terms whose var-dependent part is a power with
// rational-or-symbolic exponent, a power of a linear base, exp/sin/cos/log of a
// linear argument, or a polynomial times such an exponential. Nullopt when the
// term falls outside that class.
std::optional<Expr> antiderivative(const Expr& e, const std::string& var);

// Potential u with du = m dx + n dy; checks closedness first. Nullopt when the
// form is not closed or a quadrature falls outside the integrator's scope.
std::optional<Expr> potential_from_form(const Expr& m, const Expr& n,
                                        const ParameterTable& params, Rng& rng);

struct RectificationResult {
    PointTransformation transformation;
    bool solved = false;
    ExprList residual;   // unintegrated gradient components when unsolved
    ExprList scales;     // per input field: pushforward = scale * declared target
    std::string note;
};

// Canonical coordinates for a commuting rank-2 pair: A -> d/dxt, B -> d/dyt
// (each up to a recorded constant). Integrator failure degrades, it never lies.
RectificationResult rectify_pair(const VectorField& A, const VectorField& B,
                                 const ParameterTable& params, Rng& rng);

// Rank-1 shape: f1 -> d/dyt, f2 -> xt d/dyt with xt the coefficient ratio f2/f1.
RectificationResult rectify_rank1_pair(const VectorField& f1, const VectorField& f2,
                                       const ParameterTable& params, Rng& rng);

struct NormalizationTrace {
    Expr alpha, beta, gamma;  // affine parts read off H and Y
    Expr k;                   // coefficient of the y^(1+2/d) obstruction, must vanish
    int d = 0;                // N - 1
    std::pair<Expr, Expr> translation;  // (alpha/2, gamma/d)
};

// Translation step of the maximal-symmetry normalization: reads alpha, gamma from
// the pushforward of H, recenters, extracts k (error unless k = 0), and verifies
// the whole algebra lands in the canonical polynomial span. Parameters are bound
// to their samples for the span verification.
// Rational coefficients expressing the coefficient pair (fp, fq) inside the
// span of the basis pairs, found numerically and certified by exact is_zero
// residuals; nullopt when the pair falls outside the span.
std::optional<std::vector<Rational>> span_coefficients(
    const std::vector<std::pair<Expr, Expr>>& basis, const Expr& fp, const Expr& fq,
    const ParameterTable& params, Rng& rng);

std::pair<PointTransformation, NormalizationTrace> affine_normalize(
    const std::vector<VectorField>& fields, const Sl2Triple& triple,
    const PointTransformation& T, int N, const ParameterTable& params, Rng& rng);

}  // namespace linsym
