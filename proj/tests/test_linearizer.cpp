#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "linsym/linearizer.hpp"

using namespace linsym;

namespace {

bool same_rhs(const Expr& a, const Expr& b, const ParameterTable& params, Rng& rng) {
    return is_zero(clear_denominators(a - b), params, rng);
}

// 5-dim model algebra for y''' = (l+m) y'' - l*m y'
fixtures::Example dim5_model(const std::string& f4, const std::string& f5,
                             const std::string& rhs) {
    fixtures::Example ex;
    ex.name = "dim5 model";
    ex.ode = {3, fixtures::E(rhs)};
    ex.gens = {fixtures::VF("1", "0"), fixtures::VF("0", "y"), fixtures::VF("0", "1"),
               fixtures::VF("0", f4), fixtures::VF("0", f5)};
    return ex;
}

}  // namespace

TEST_CASE("classification recovers the expected case for every worked example") {
    Rng rng(3);
    auto ex1 = fixtures::class1();
    CHECK(classify(ex1.gens, 3, ex1.params, rng).kind == CaseKind::Solvable4);

    auto ex2a = fixtures::class2a();
    CHECK(classify(ex2a.gens, 3, ex2a.params, rng).kind == CaseKind::Solvable5Complex);

    auto ex2b = fixtures::class2b();
    CHECK(classify(ex2b.gens, 3, ex2b.params, rng).kind == CaseKind::Solvable5Complex);

    auto ex3 = fixtures::class3();
    auto tag3 = classify(ex3.gens, 3, ex3.params, rng);
    CHECK(tag3.kind == CaseKind::MaximalSymmetry);
    CHECK(tag3.order == 3);

    auto ex4 = fixtures::fourth();
    CHECK(classify(ex4.gens, 4, ex4.params, rng).kind == CaseKind::MaximalSymmetry);

    auto ex5 = fixtures::fifth();
    CHECK(classify(ex5.gens, 5, ex5.params, rng).kind == CaseKind::MaximalSymmetry);
}

TEST_CASE("six generators at order 3 fall outside the covered dimensions") {
    Rng rng(5);
    auto ex = fixtures::class2b();
    ex.gens.push_back(fixtures::VF("1", "0"));
    auto tag = classify(ex.gens, 3, ex.params, rng);
    CHECK(tag.kind == CaseKind::NotCovered);
    CHECK(tag.reason.find("dimension") != std::string::npos);
}

TEST_CASE("classification is invariant under a change of generator basis") {
    Rng rng(9);
    auto ex = fixtures::class2b();
    std::vector<VectorField> mixed;
    size_t m = ex.gens.size();
    for (size_t i = 0; i < m; ++i) {
        // row i of an invertible integer matrix: unit + shifted unit + i * last
        VectorField f = ex.gens[i];
        const VectorField& g = ex.gens[(i + 1) % m];
        const VectorField& h = ex.gens[m - 1];
        Expr k = Expr::num(Rational(static_cast<long>(i)));
        mixed.push_back({normalize(f.xi + Expr::num(2) * g.xi + k * h.xi),
                         normalize(f.eta + Expr::num(2) * g.eta + k * h.eta)});
    }
    // the mix is unimodular for this size: verified by the span
    auto tag = classify(mixed, 3, ex.params, rng);
    CHECK(tag.kind == CaseKind::Solvable5Complex);
}

TEST_CASE("dim-4 class: phi = x e^x target reproduced end to end") {
    Rng rng(17);
    auto ex = fixtures::class1();
    auto res = linearize(ex.gens, 3, ex.ode, ex.params, rng);
    REQUIRE(res.tag.kind == CaseKind::Solvable4);
    REQUIRE(res.solved);
    CHECK(res.pullback_ok);
    CHECK(res.span_ok);
    CHECK_FALSE(depends_on(res.phi, "y"));
    CHECK(same_rhs(res.target.rhs, ex.target.rhs, ex.params, rng));
}

TEST_CASE("dim-4 class: polynomial and exponential phi models") {
    Rng rng(21);
    struct Model {
        const char* f4;
        const char* rhs;
    };
    // canonical algebras <y dy, dy, x dy, phi dy> for phi = x^3 and phi = e^x
    for (Model m : {Model{"x^3", "y''/x"}, Model{"exp(x)", "y''"}}) {
        std::vector<VectorField> gens = {fixtures::VF("0", "y"), fixtures::VF("0", "1"),
                                         fixtures::VF("0", "x"), fixtures::VF("0", m.f4)};
        OdeSpec ode{3, fixtures::E(m.rhs)};
        ParameterTable params;
        auto res = linearize(gens, 3, ode, params, rng);
        REQUIRE(res.tag.kind == CaseKind::Solvable4);
        CHECK(res.solved);
        CHECK(res.pullback_ok);
        CHECK(res.span_ok);
        CHECK_FALSE(depends_on(res.phi, "y"));
    }
}

TEST_CASE("dim-5 real distinct: exp(x), exp(2x) gives y''' = 3y'' - 2y'") {
    Rng rng(29);
    auto ex = dim5_model("exp(x)", "exp(2*x)", "3*y'' - 2*y'");
    auto res = linearize(ex.gens, 3, ex.ode, ex.params, rng);
    REQUIRE(res.tag.kind == CaseKind::Solvable5RealDistinct);
    REQUIRE(res.eigen.has_value());
    Quad lo = res.eigen->lambda, hi = res.eigen->mu;
    if (lo.to_double() > hi.to_double()) std::swap(lo, hi);
    CHECK(lo == Quad(1));
    CHECK(hi == Quad(2));
    CHECK(res.eigen->sum == Quad(3));
    CHECK(res.eigen->product == Quad(2));
    CHECK(res.solved);
    CHECK(res.pullback_ok);
    CHECK(res.span_ok);
    CHECK(same_rhs(res.target.rhs, ex.ode.rhs, ex.params, rng));
}

TEST_CASE("dim-5 repeated: exp(x), x exp(x) gives y''' = 2y'' - y'") {
    Rng rng(31);
    auto ex = dim5_model("exp(x)", "x*exp(x)", "2*y'' - y'");
    auto res = linearize(ex.gens, 3, ex.ode, ex.params, rng);
    REQUIRE(res.tag.kind == CaseKind::Solvable5Repeated);
    REQUIRE(res.eigen.has_value());
    CHECK(res.eigen->repeated);
    CHECK(res.eigen->lambda == Quad(1));
    CHECK(res.solved);
    CHECK(res.pullback_ok);
    CHECK(res.span_ok);
}

TEST_CASE("dim-5 complex model: exp(x)cos(x), exp(x)sin(x)") {
    Rng rng(37);
    auto ex = dim5_model("exp(x)*cos(x)", "exp(x)*sin(x)", "2*y'' - 2*y'");
    auto res = linearize(ex.gens, 3, ex.ode, ex.params, rng);
    REQUIRE(res.tag.kind == CaseKind::Solvable5Complex);
    REQUIRE(res.eigen.has_value());
    CHECK(res.eigen->complex_pair);
    CHECK(res.eigen->re == Quad(1));
    CHECK(res.eigen->im == Quad(1));
    CHECK(res.solved);
    CHECK(res.pullback_ok);
    CHECK(res.span_ok);
}

TEST_CASE("class 2a linearizes to v''' = 3v'' - 3v' with eigenvalues 3/2 +- (sqrt 3 / 2) i") {
    Rng rng(41);
    auto ex = fixtures::class2a();
    auto res = linearize(ex.gens, 3, ex.ode, ex.params, rng);
    REQUIRE(res.tag.kind == CaseKind::Solvable5Complex);
    REQUIRE(res.eigen.has_value());
    CHECK(res.eigen->complex_pair);
    CHECK(res.eigen->re == Quad(Rational(3, 2)));
    CHECK(res.eigen->im == Quad(Rational(0), Rational(1, 2), 3));
    CHECK(res.solved);
    CHECK(res.pullback_ok);
    CHECK(res.span_ok);
    CHECK(same_rhs(res.target.rhs, ex.target.rhs, ex.params, rng));
}

TEST_CASE("class 2b linearizes to v''' = 2v'' - 2v'") {
    Rng rng(43);
    auto ex = fixtures::class2b();
    auto res = linearize(ex.gens, 3, ex.ode, ex.params, rng);
    REQUIRE(res.tag.kind == CaseKind::Solvable5Complex);
    REQUIRE(res.eigen.has_value());
    CHECK(res.eigen->re == Quad(1));
    CHECK(res.eigen->im == Quad(1));
    CHECK(res.solved);
    CHECK(res.pullback_ok);
    CHECK(same_rhs(res.target.rhs, ex.target.rhs, ex.params, rng));
}

TEST_CASE("maximal case: class 3 and the canonical algebras linearize to y^(N) = 0") {
    Rng rng(47);
    for (auto ex : {fixtures::class3(), fixtures::canonical(3), fixtures::canonical(4)}) {
        int N = ex.ode.order;
        auto res = linearize(ex.gens, N, ex.ode, ex.params, rng);
        INFO(ex.name);
        REQUIRE(res.tag.kind == CaseKind::MaximalSymmetry);
        CHECK(res.solved);
        CHECK(res.pullback_ok);
        CHECK(res.span_ok);
        CHECK(is_zero(res.target.rhs, ex.params, rng));
        CHECK(res.trace.has_value());
    }
}

TEST_CASE("maximal case: fourth-order example with parameter") {
    Rng rng(53);
    auto ex = fixtures::fourth();
    auto res = linearize(ex.gens, 4, ex.ode, ex.params, rng);
    REQUIRE(res.tag.kind == CaseKind::MaximalSymmetry);
    CHECK(res.solved);
    CHECK(res.pullback_ok);
    CHECK(is_zero(res.target.rhs, ex.params, rng));
}

TEST_CASE("maximal case: fifth-order example") {
    Rng rng(59);
    auto ex = fixtures::fifth();
    auto res = linearize(ex.gens, 5, ex.ode, ex.params, rng);
    REQUIRE(res.tag.kind == CaseKind::MaximalSymmetry);
    CHECK(res.solved);
    CHECK(res.pullback_ok);
    CHECK(is_zero(res.target.rhs, ex.params, rng));
}

TEST_CASE("second-order input is classified but the construction is refused") {
    Rng rng(61);
    auto ex = fixtures::canonical(2);
    auto res = linearize(ex.gens, 2, ex.ode, ex.params, rng);
    CHECK(res.tag.kind == CaseKind::MaximalSymmetry);
    CHECK_FALSE(res.solved);
    CHECK(res.note.find("order") != std::string::npos);
}

TEST_CASE("the symmetry gate refuses generators that fail the check") {
    Rng rng(67);
    auto ex = fixtures::class2a();
    OdeSpec wrong{3, Expr::num(0)};
    auto res = linearize(ex.gens, 3, wrong, ex.params, rng);
    CHECK(res.tag.kind == CaseKind::NotCovered);
    CHECK_FALSE(res.solved);
    CHECK(res.note.find("refused") != std::string::npos);

    auto forced = linearize(ex.gens, 3, wrong, ex.params, rng, true);
    CHECK(forced.tag.kind == CaseKind::Solvable5Complex);
    CHECK_FALSE(forced.pullback_ok);  // the target cannot match a non-symmetric equation
    CHECK(forced.note.find("warning") != std::string::npos);
}
