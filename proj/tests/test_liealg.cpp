#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "linsym/liealg.hpp"

using namespace linsym;
using fixtures::VF;

namespace {

ParameterTable no_params;

QVec unit(size_t n, size_t i) {
    QVec v(n, Quad(0));
    v[i] = Quad(1);
    return v;
}

QVec combo(size_t n, std::initializer_list<std::pair<size_t, Quad>> parts) {
    QVec v(n, Quad(0));
    for (const auto& [i, q] : parts) v[i] = q;
    return v;
}

// sl(2,R) in the standard (X, Y, H) basis, as raw structure constants
LieAlgebraStructure sl2_abstract() {
    LieAlgebraStructure L;
    L.n = 3;
    L.labels = {"X", "Y", "H"};
    L.c.assign(3, std::vector<QVec>(3, QVec(3, Quad(0))));
    auto set = [&](size_t i, size_t j, QVec v) {
        L.c[i][j] = v;
        for (size_t k = 0; k < 3; ++k) L.c[j][i][k] = -v[k];
    };
    set(0, 1, unit(3, 2));                         // [X,Y] = H
    set(2, 0, {Quad(2), Quad(0), Quad(0)});        // [H,X] = 2X
    set(2, 1, {Quad(0), Quad(-2), Quad(0)});       // [H,Y] = -2Y
    L.verify();
    return L;
}

}  // namespace

TEST_CASE("structure constants of small algebras") {
    Rng rng(1);
    auto L1 = structure_constants({VF("1", "0"), VF("x", "0")}, no_params, rng);
    CHECK(L1.c[0][1] == unit(2, 0));  // [dx, x dx] = dx

    auto L2 = structure_constants({VF("1", "0"), VF("0", "1"), VF("0", "x")}, no_params, rng);
    CHECK(L2.c[0][2] == unit(3, 1));
    CHECK(qvec_is_zero(L2.c[0][1]));
    CHECK(qvec_is_zero(L2.c[1][2]));
}

TEST_CASE("structure constants pick up the quadratic extension") {
    Rng rng(2);
    auto ex = fixtures::class2a();
    auto L = structure_constants(ex.gens, ex.params, rng);
    CHECK(L.disc == 3);
    // [e1, e4] = (1/2) e4 + (sqrt3/2) e5
    QVec expect = combo(5, {{3, Quad(Rational(1, 2))},
                            {4, Quad(Rational(0), Rational(1, 2), 3)}});
    CHECK(L.c[0][3] == expect);
    // [e2, e3] = -e3
    CHECK(L.c[1][2] == combo(5, {{2, Quad(-1)}}));
    CHECK(qvec_is_zero(L.c[0][1]));
}

TEST_CASE("structure constants reject bad input") {
    Rng rng(3);
    CHECK_THROWS_AS(structure_constants({VF("1", "0"), VF("2", "0")}, no_params, rng), LieError);
    CHECK_THROWS_AS(structure_constants({VF("1", "0"), VF("x^2", "0")}, no_params, rng), LieError);
}

TEST_CASE("derived algebras of the worked examples") {
    Rng rng(4);
    auto c1 = fixtures::class1();
    auto L1 = structure_constants(c1.gens, c1.params, rng);
    Subspace d1 = derived_algebra(L1);
    CHECK(subspace_equal(d1, span_of({unit(4, 1), unit(4, 2), unit(4, 3)})));

    auto L0 = structure_constants({VF("0", "1"), VF("0", "x")}, no_params, rng);
    CHECK(derived_algebra(L0).empty());

    auto c2b = fixtures::class2b();
    auto L2b = structure_constants(c2b.gens, c2b.params, rng);
    CHECK(subspace_equal(derived_algebra(L2b), span_of({unit(5, 2), unit(5, 3), unit(5, 4)})));
}

TEST_CASE("centralizers") {
    Rng rng(5);
    auto c2a = fixtures::class2a();
    auto L = structure_constants(c2a.gens, c2a.params, rng);
    Subspace A = span_of({unit(5, 0), unit(5, 1)});
    Subspace Z = centralizer(L, unit(5, 2), A);
    CHECK(subspace_equal(Z, span_of({combo(5, {{0, Quad(1)}, {1, Quad(-1)}})})));

    auto c2b = fixtures::class2b();
    auto L2 = structure_constants(c2b.gens, c2b.params, rng);
    Subspace Z2 = centralizer(L2, unit(5, 4), span_of({unit(5, 0), unit(5, 1)}));
    CHECK(subspace_equal(Z2, span_of({combo(5, {{0, Quad(1)}, {1, Quad(-1)}})})));

    auto ab = structure_constants({VF("0", "1"), VF("0", "x")}, no_params, rng);
    Subspace all = span_of({unit(2, 0), unit(2, 1)});
    CHECK(subspace_equal(centralizer(ab, unit(2, 0), all), all));
}

TEST_CASE("killing form oracles") {
    auto sl2 = sl2_abstract();
    QMat K = killing_form(sl2);
    CHECK(K[2][2] == Quad(8));
    CHECK(K[0][1] == Quad(4));
    CHECK(K[0][0] == Quad(0));
    CHECK(K[1][1] == Quad(0));

    Rng rng(6);
    auto L = structure_constants({VF("1", "0"), VF("x", "0")}, no_params, rng);
    QMat K2 = killing_form(L);
    CHECK(K2[1][1] == Quad(1));
    CHECK(K2[0][0] == Quad(0));
    CHECK(K2[0][1] == Quad(0));

    auto ab = structure_constants({VF("0", "1"), VF("0", "x")}, no_params, rng);
    QMat K3 = killing_form(ab);
    for (const auto& row : K3)
        for (const auto& q : row) CHECK(q == Quad(0));
}

TEST_CASE("radical of the worked examples") {
    Rng rng(7);
    auto c1 = fixtures::class1();
    auto L1 = structure_constants(c1.gens, c1.params, rng);
    CHECK(radical(L1).size() == 4);  // solvable: radical is everything

    auto can3 = fixtures::canonical(3);
    auto Lc = structure_constants(can3.gens, can3.params, rng);
    // generators 3..6 are dy, x dy, x^2 dy, y dy
    Subspace expect = span_of({unit(7, 3), unit(7, 4), unit(7, 5), unit(7, 6)});
    CHECK(subspace_equal(radical(Lc), expect));

    auto c3 = fixtures::class3();
    auto L3 = structure_constants(c3.gens, c3.params, rng);
    CHECK(subspace_equal(radical(L3), span_of({unit(7, 2), unit(7, 3), unit(7, 4), unit(7, 5)})));
}

TEST_CASE("levi decomposition matches the stated spans") {
    Rng rng(8);
    // Class 3 at a = 2: Levi = {e1 + (3/5) e3, e2, e7}
    auto c3 = fixtures::class3();
    auto L3 = structure_constants(c3.gens, c3.params, rng);
    auto lv = levi_decomposition(L3);
    CHECK(lv.radical.size() == 4);
    CHECK(lv.levi.size() == 3);
    Subspace stated = span_of({combo(7, {{0, Quad(1)}, {2, Quad(Rational(3, 5))}}),
                               unit(7, 1), unit(7, 6)});
    CHECK(subspace_equal(span_of(lv.levi), stated));

    // solvable: empty Levi part
    auto c1 = fixtures::class1();
    auto L1 = structure_constants(c1.gens, c1.params, rng);
    CHECK(levi_decomposition(L1).levi.empty());

    // fourth order at a = 4: Levi = {e1 + (3/8) e3, e2, e8}
    auto c4 = fixtures::fourth();
    auto L4 = structure_constants(c4.gens, c4.params, rng);
    auto lv4 = levi_decomposition(L4);
    Subspace stated4 = span_of({combo(8, {{0, Quad(1)}, {2, Quad(Rational(3, 8))}}),
                                unit(8, 1), unit(8, 7)});
    CHECK(subspace_equal(span_of(lv4.levi), stated4));
}

TEST_CASE("levi part is an ideal-complement with nondegenerate killing form") {
    Rng rng(9);
    for (int N : {3, 4, 5}) {
        auto can = fixtures::canonical(N);
        auto L = structure_constants(can.gens, can.params, rng);
        auto lv = levi_decomposition(L);
        CHECK(lv.levi.size() == 3);
        CHECK(lv.radical.size() == size_t(N + 1));
        for (const auto& u : lv.levi)
            for (const auto& v : lv.levi)
                CHECK(subspace_contains(span_of(lv.levi), L.bracket_vec(u, v)));
    }
}

TEST_CASE("sl2 standard triple") {
    auto sl2 = sl2_abstract();
    Subspace full = span_of({unit(3, 0), unit(3, 1), unit(3, 2)});
    auto t = sl2_standard_triple(sl2, full);
    CHECK(sl2.bracket_vec(t.X, t.Y) == t.H);

    Rng rng(10);
    auto c3 = fixtures::class3();
    auto L3 = structure_constants(c3.gens, c3.params, rng);
    auto lv = levi_decomposition(L3);
    auto tr = sl2_standard_triple(L3, lv.levi);
    // relations hold inside the full algebra
    CHECK(L3.bracket_vec(tr.X, tr.Y) == tr.H);
    QVec hx = L3.bracket_vec(tr.H, tr.X);
    QVec hy = L3.bracket_vec(tr.H, tr.Y);
    for (size_t i = 0; i < 7; ++i) {
        CHECK(hx[i] == Quad(2) * tr.X[i]);
        CHECK(hy[i] == -Quad(2) * tr.Y[i]);
    }
    // normalization facts for this algebra: [H, e3] = 0 and [H, e6] = -2 e6
    CHECK(qvec_is_zero(L3.bracket_vec(tr.H, unit(7, 2))));
    CHECK(L3.bracket_vec(tr.H, unit(7, 5)) == combo(7, {{5, Quad(-2)}}));
}

TEST_CASE("adjoint eigenvalues") {
    Rng rng(11);
    auto c2a = fixtures::class2a();
    auto L = structure_constants(c2a.gens, c2a.params, rng);
    Subspace gp = derived_algebra(L);
    CHECK(gp.size() == 3);

    // ad(e2) on g' is multiplication by -1
    auto comp = adjoint_eigen(L, unit(5, 1), gp);
    REQUIRE(comp.size() == 1);
    CHECK(comp[0].re == Quad(-1));
    CHECK(comp[0].im == Quad(0));
    CHECK(comp[0].vectors.size() == 3);

    // ad(e1 - e2) on g': 0 and the conjugate pair 3/2 +- (sqrt3/2) i.
    // (not {0, +-sqrt3}: the nonzero eigenvalues are complex, matching the
    // target v''' - 3v'' + 3v' = 0 whose roots are (3 +- i sqrt3)/2.)
    auto comp2 = adjoint_eigen(L, combo(5, {{0, Quad(1)}, {1, Quad(-1)}}), gp);
    REQUIRE(comp2.size() == 2);
    CHECK(comp2[0].re == Quad(0));
    CHECK(comp2[0].im == Quad(0));
    CHECK(comp2[0].vectors.size() == 1);
    CHECK(comp2[1].re == Quad(Rational(3, 2)));
    CHECK(comp2[1].im == Quad(Rational(0), Rational(1, 2), 3));
    CHECK(comp2[1].vectors.size() == 2);

    // Class 2b: ad(e1 - e2) on <e3, e4> has eigenvalues 1 +- i
    auto c2b = fixtures::class2b();
    auto L2 = structure_constants(c2b.gens, c2b.params, rng);
    auto comp3 = adjoint_eigen(L2, combo(5, {{0, Quad(1)}, {1, Quad(-1)}}),
                               span_of({unit(5, 2), unit(5, 3)}));
    REQUIRE(comp3.size() == 1);
    CHECK(comp3[0].re == Quad(1));
    CHECK(comp3[0].im == Quad(1));
    CHECK(comp3[0].vectors.size() == 2);
}

TEST_CASE("abelian complement") {
    Rng rng(12);
    auto c2a = fixtures::class2a();
    auto L = structure_constants(c2a.gens, c2a.params, rng);
    auto A = abelian_complement(L);
    REQUIRE(A);
    CHECK(subspace_equal(span_of(*A), span_of({unit(5, 0), unit(5, 1)})));

    auto c2b = fixtures::class2b();
    auto L2 = structure_constants(c2b.gens, c2b.params, rng);
    auto A2 = abelian_complement(L2);
    REQUIRE(A2);
    CHECK(subspace_equal(span_of(*A2), span_of({unit(5, 0), unit(5, 1)})));
}

TEST_CASE("abelian complement can fail: obstructed center direction") {
    // [e1,e2]=e3, [e1,e4]=e4, [e2,e5]=e5: derived = <e3,e4,e5> is abelian of
    // codimension 2, but the e3 component of [e1+u, e2+v] is always 1.
    LieAlgebraStructure L;
    L.n = 5;
    L.labels = {"e1", "e2", "e3", "e4", "e5"};
    L.c.assign(5, std::vector<QVec>(5, QVec(5, Quad(0))));
    auto set = [&](size_t i, size_t j, size_t k, Quad v) {
        L.c[i][j][k] = v;
        L.c[j][i][k] = -v;
    };
    set(0, 1, 2, Quad(1));
    set(0, 3, 3, Quad(1));
    set(1, 4, 4, Quad(1));
    L.verify();
    CHECK(!abelian_complement(L));
}

TEST_CASE("killing form vanishes on the radical pairing with derived") {
    Rng rng(13);
    auto can = fixtures::canonical(4);
    auto L = structure_constants(can.gens, can.params, rng);
    QMat K = killing_form(L);
    Subspace rad = radical(L);
    Subspace der = derived_algebra(L);
    for (const auto& r : rad)
        for (const auto& d : der) CHECK(qvec_dot(r, qmat_apply(K, d)) == Quad(0));
}
