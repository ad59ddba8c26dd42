#pragma once

#include "linsym/field.hpp"
#include "linsym/qmat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace linsym {

struct LieError {
    std::string message;
};

// Abstract finite-dimensional Lie algebra over Q or Q(sqrt(disc)); c[i][j] holds
// the coordinates of [b_i, b_j] in the ordered basis.
struct LieAlgebraStructure {
    size_t n = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<QVec>> c;
    long long disc = 0;
    std::vector<VectorField> fields;  // originating fields, when constructed from them

    QVec bracket_vec(const QVec& u, const QVec& v) const;
    QMat ad(const QVec& u) const;  // matrix of x -> [u, x]
    void verify() const;           // antisymmetry + Jacobi, throws LieError
    VectorField realize(const QVec& u) const;  // combination of the source fields
};

// A subspace given by a spanning set of coordinate vectors (kept rref-reduced).
using Subspace = std::vector<QVec>;

Subspace span_of(std::vector<QVec> vectors);
bool subspace_contains(const Subspace& s, const QVec& v);
bool subspace_equal(const Subspace& s, const Subspace& t);

// Exact structure constants by matching coefficients of the normalized
// coordinate functions; parameters are substituted at their sample values.
LieAlgebraStructure structure_constants(const std::vector<VectorField>& fields,
                                        const ParameterTable& params, Rng& rng);

Subspace derived_algebra(const LieAlgebraStructure& L);

Subspace centralizer(const LieAlgebraStructure& L, const QVec& w, const Subspace& A);

QMat killing_form(const LieAlgebraStructure& L);

Subspace radical(const LieAlgebraStructure& L);

struct LeviDecomposition {
    Subspace radical;
    Subspace levi;
};

LeviDecomposition levi_decomposition(const LieAlgebraStructure& L);

struct Sl2Triple {
    QVec X, Y, H;
};

// Standard triple inside a 3-dimensional Levi complement: [X,Y]=H, [H,X]=2X,
// [H,Y]=-2Y, exactly. Throws LieError when the complement is not split.
Sl2Triple sl2_standard_triple(const LieAlgebraStructure& L, const Subspace& levi);

struct EigenComponent {
    Quad re, im;        // eigenvalue; conjugate pairs are reported once with im chosen >= 0
    Subspace vectors;   // eigenspace, or the real invariant 2-plane for a complex pair
};

// Eigen-decomposition of ad(h) restricted to the invariant subspace W.
std::vector<EigenComponent> adjoint_eigen(const LieAlgebraStructure& L, const QVec& h,
                                          const Subspace& W);

// A 2-dimensional abelian subalgebra complementing the derived algebra, or
// nullopt when the affine system is inconsistent. Requires codim 2.
std::optional<Subspace> abelian_complement(const LieAlgebraStructure& L);

}  // namespace linsym
