#pragma once

#include "linsym/rectify.hpp"
#include "linsym/sl2rep.hpp"

namespace linsym {

enum class CaseKind {
    MaximalSymmetry,
    Solvable4,
    Solvable5RealDistinct,
    Solvable5Complex,
    Solvable5Repeated,
    NotCovered,
};

// eigendata of the dim-5 quotient action: roots of x^2 - sum*x + product
struct EigenData {
    Quad sum, product;       // lambda + mu, lambda * mu
    bool complex_pair = false;
    bool repeated = false;
    Quad lambda, mu;         // real case (repeated: lambda == mu)
    Quad re, im;             // complex case: lambda = re + i*im, im > 0
    Quad raw_k;              // scalar action of e2 before normalization to -1
};

struct CaseTag {
    CaseKind kind = CaseKind::NotCovered;
    int order = 0;                  // N for MaximalSymmetry
    std::string reason;             // first failed condition when NotCovered
    std::optional<EigenData> eigen; // surfaced for the dim-5 cases
};

const char* case_name(CaseKind k);

struct LinearizationResult {
    CaseTag tag;
    bool solved = false;
    std::vector<VectorField> pair;           // the distinguished rank-2 pair
    PointTransformation transformation;
    std::optional<NormalizationTrace> trace; // maximal case
    OdeSpec target{0, Expr::num(0)};
    bool pullback_ok = false;
    bool span_ok = false;                    // generators land in the target span
    std::optional<EigenData> eigen;          // dim-5 case
    Expr phi = Expr::num(0);                 // dim-4 case: phi(xt)
    std::string note;
};

// Decision tree over the structure of the algebra; failures are reported as
// NotCovered with the first failed condition, never thrown.
CaseTag classify(const std::vector<VectorField>& fields, int N, const ParameterTable& params,
                 Rng& rng);

// The three pipelines. Stage failures throw FieldError/LieError with the stage
// named; the dispatcher below converts those into NotCovered results.
LinearizationResult linearize_maximal(const std::vector<VectorField>& fields, int N,
                                      const OdeSpec& ode, const ParameterTable& params, Rng& rng);
LinearizationResult linearize_dim4(const std::vector<VectorField>& fields, const OdeSpec& ode,
                                   const ParameterTable& params, Rng& rng);
LinearizationResult linearize_dim5(const std::vector<VectorField>& fields, const OdeSpec& ode,
                                   const ParameterTable& params, Rng& rng);

// Symmetry-gate + classify + dispatch. force skips the refusal on generators
// that fail the symmetry check (they are still reported in note).
LinearizationResult linearize(const std::vector<VectorField>& fields, int N, const OdeSpec& ode,
                              const ParameterTable& params, Rng& rng, bool force = false);

}  // namespace linsym
