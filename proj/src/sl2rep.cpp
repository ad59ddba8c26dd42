#include "linsym/sl2rep.hpp"

#include <algorithm>

namespace linsym {

size_t ModuleDecomposition::total_dim() const {
    size_t d = 0;
    for (const auto& comp : components) d += comp.chain.size();
    return d;
}

namespace {

QVec negated(const QVec& v) {
    QVec out = v;
    for (auto& q : out) q = -q;
    return out;
}

// One orientation attempt; throws LieError when the radical fails to be a
// polynomial module for this choice of Borel.
ModuleDecomposition attempt(const LieAlgebraStructure& L, const Sl2Triple& tr,
                            const Subspace& radical, bool swapped) {
    // kernel of ad X restricted to the radical, in radical coordinates
    QMat m(L.n, QVec(radical.size(), Quad{}));
    for (size_t j = 0; j < radical.size(); ++j) {
        QVec img = L.bracket_vec(tr.X, radical[j]);
        for (size_t i = 0; i < L.n; ++i) m[i][j] = img[i];
    }
    std::vector<QVec> kernel;
    for (const auto& coords : qmat_nullspace(m)) {
        QVec v(L.n, Quad{});
        for (size_t j = 0; j < radical.size(); ++j)
            for (size_t i = 0; i < L.n; ++i) v[i] += coords[j] * radical[j][i];
        kernel.push_back(v);
    }
    Subspace W = span_of(kernel);
    if (W.empty()) throw LieError{"ad X has trivial kernel on the radical"};

    ModuleDecomposition dec;
    dec.used = tr;
    dec.swapped = swapped;
    for (const auto& comp : adjoint_eigen(L, tr.H, W)) {
        if (!comp.im.is_zero())
            throw LieError{"highest-weight space carries a non-real ad H eigenvalue"};
        if (!comp.re.is_rational() || !is_integer(comp.re.a) || comp.re.a < 0)
            throw LieError{"ad H eigenvalue " + comp.re.str() +
                           " on the highest-weight space is not a nonnegative integer"};
        long d = num(comp.re.a).convert_to<long>();
        for (const auto& hw : comp.vectors) {
            ModuleComponent mc;
            mc.highest = hw;
            mc.weight = d;
            QVec cur = hw;
            mc.chain.push_back(cur);
            for (long k = 0; k < d; ++k) {
                cur = L.bracket_vec(tr.Y, cur);
                if (qvec_is_zero(cur)) throw LieError{"lowering chain terminated early"};
                mc.chain.push_back(cur);
            }
            if (!qvec_is_zero(L.bracket_vec(tr.Y, cur)))
                throw LieError{"lowering chain does not terminate at the expected weight"};
            dec.components.push_back(std::move(mc));
        }
    }

    std::vector<QVec> all;
    for (const auto& mc : dec.components)
        for (const auto& v : mc.chain) all.push_back(v);
    Subspace spanned = span_of(std::move(all));
    if (dec.total_dim() != radical.size() || !subspace_equal(spanned, span_of(radical)))
        throw LieError{"chains do not fill out the radical"};

    std::stable_sort(dec.components.begin(), dec.components.end(),
                     [](const ModuleComponent& a, const ModuleComponent& b) {
                         return a.weight > b.weight;
                     });
    return dec;
}

}  // namespace

ModuleDecomposition decompose_radical(const LieAlgebraStructure& L, const Sl2Triple& triple,
                                      const Subspace& radical) {
    try {
        return attempt(L, triple, radical, false);
    } catch (const LieError&) {
        Sl2Triple flipped{triple.Y, triple.X, negated(triple.H)};
        try {
            return attempt(L, flipped, radical, true);
        } catch (const LieError& e2) {
            throw LieError{"radical is not a polynomial module in either orientation: " +
                           e2.message};
        }
    }
}

LinearizingPair select_linearizing_pair(const LieAlgebraStructure& L,
                                        const ModuleDecomposition& dec, int N,
                                        const ParameterTable& params, Rng& rng) {
    if (dec.components.size() != 2)
        throw LieError{"radical splits into " + std::to_string(dec.components.size()) +
                       " irreducible components, expected 2"};
    const auto& big = dec.components[0];
    const auto& triv = dec.components[1];
    if (big.weight != N - 1 || triv.weight != 0)
        throw LieError{"component weights are (" + std::to_string(big.weight) + ", " +
                       std::to_string(triv.weight) + "), expected (" + std::to_string(N - 1) +
                       ", 0)"};

    auto rank2 = [&](const QVec& u, const QVec& v) {
        std::vector<VectorField> pair{L.realize(u), L.realize(v)};
        return generic_rank(pair, 0, params, rng) == 2;
    };
    if (rank2(dec.used.X, big.highest)) return {dec.used.X, big.highest};
    if (rank2(dec.used.Y, big.chain.back())) return {dec.used.Y, big.chain.back()};
    throw LieError{"neither (X, highest-weight) nor (Y, lowest-weight) has generic rank 2"};
}

}  // namespace linsym
