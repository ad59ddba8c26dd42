#pragma once

#include "linsym/liealg.hpp"

namespace linsym {

struct ModuleComponent {
    QVec highest;            // highest-weight vector
    long weight = 0;         // d: ad H eigenvalue, dimension is d+1
    std::vector<QVec> chain; // highest, [Y,highest], ..., length d+1
};

struct ModuleDecomposition {
    std::vector<ModuleComponent> components;  // ordered by decreasing weight
    Sl2Triple used;                           // orientation actually used
    bool swapped = false;                     // true when (X,Y,H) -> (Y,X,-H) was needed
    size_t total_dim() const;
};

// Irreducible components of the radical as a module over the triple: kernel of
// ad X, integer ad H eigenvalues there, chains by repeated ad Y. Retries with
// the opposite Borel orientation before giving up.
ModuleDecomposition decompose_radical(const LieAlgebraStructure& L, const Sl2Triple& triple,
                                      const Subspace& radical);

struct LinearizingPair {
    QVec X, V;  // X of the (possibly reoriented) triple and the highest-weight vector
};

// The rank-2 pair (X, V) of the maximal-symmetry hypothesis: V is the
// highest-weight vector of the N-dimensional component. Falls back to the
// opposite orientation (Y, lowest-weight vector) when (X, V) is rank-deficient.
LinearizingPair select_linearizing_pair(const LieAlgebraStructure& L,
                                        const ModuleDecomposition& dec, int N,
                                        const ParameterTable& params, Rng& rng);

}  // namespace linsym
