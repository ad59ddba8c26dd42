#pragma once

#include "linsym/expr.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace linsym {

struct FieldError {
    std::string message;
};

// xi*d/dx + eta*d/dy with coefficients in (x, y)
struct VectorField {
    Expr xi, eta;
};

inline std::string jet_name(int k) { return k == 0 ? "y" : "y" + std::to_string(k); }

// A(f) = xi*f_x + eta*f_y
Expr apply_field(const VectorField& A, const Expr& f);

VectorField bracket(const VectorField& A, const VectorField& B);

// Total derivative D_x = d/dx + y'*d/dy + y''*d/dy' + ... over the jets present in e.
Expr total_derivative(const Expr& e);

// coeff[0] is the d/dx coefficient, coeff[k+1] the d/dy^(k) coefficient.
struct ProlongedField {
    int order;
    ExprList coeff;
};

ProlongedField prolong(const VectorField& A, int N);
Expr apply_prolonged(const ProlongedField& A, const Expr& f);

// y^(N) = rhs, rhs in (x, y, y1, ..., y_{N-1})
struct OdeSpec {
    int order;
    Expr rhs;
};

ZeroTest is_symmetry_test(const VectorField& A, const OdeSpec& ode, const ParameterTable& params,
                          Rng& rng);
bool is_symmetry(const VectorField& A, const OdeSpec& ode, const ParameterTable& params, Rng& rng);

// Numeric rank of the prolonged coefficient matrix, maximum over >= 8 random
// sample points. jet_order 0 gives the base-plane rank.
int generic_rank(const std::vector<VectorField>& fields, int jet_order,
                 const ParameterTable& params, Rng& rng);

// Determinant of the prolonged coefficient matrix after dropping identically
// zero columns; throws FieldError unless that leaves a square matrix.
Expr singular_locus(const std::vector<VectorField>& fields, int jet_order);

// xt = P(x,y), yt = Q(x,y); inverse, when given, expresses (x, y) in the tilde
// coordinates (written again as x, y).
struct PointTransformation {
    Expr P, Q;
    std::optional<std::pair<Expr, Expr>> inverse;
};

Expr jacobian(const PointTransformation& T);

struct PushforwardResult {
    VectorField field;
    bool in_source_coords;  // true when no inverse was available
};

PushforwardResult pushforward(const VectorField& A, const PointTransformation& T);

// Jet expressions of the transformed variable: result[k] is yt^(k) as an
// expression in the source jets, k = 1..N. result[0] is D_x P.
std::vector<Expr> transformed_jets(const PointTransformation& T, int N);

// Multiplies a sum through by the denominators visible as negative integer
// powers, so zero-testing happens on the numerator.
Expr clear_denominators(const Expr& e);

ZeroTest pullback_check_test(const OdeSpec& ode, const PointTransformation& T,
                             const OdeSpec& target, const ParameterTable& params, Rng& rng);
bool pullback_check(const OdeSpec& ode, const PointTransformation& T, const OdeSpec& target,
                    const ParameterTable& params, Rng& rng);

// Pulls a target ODE (in tilde coordinates) back through T to the source
// coordinates; the result is the ODE whose solutions T maps to target's.
OdeSpec transform_ode(const OdeSpec& target, const PointTransformation& T,
                      const ParameterTable& params, Rng& rng);

}  // namespace linsym
