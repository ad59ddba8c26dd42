#pragma once

// The worked examples used across the test suites: third-order classes 1,
// 2a, 2b, 3 plus the fourth- and fifth-order equations, each with its
// symmetry generators and (where known) the linearizing transformation.

#include "linsym/field.hpp"
#include "linsym/parser.hpp"

#include <string>
#include <vector>

namespace fixtures {

using namespace linsym;

struct Example {
    std::string name;
    OdeSpec ode;
    std::vector<VectorField> gens;
    ParameterTable params;
    PointTransformation transform;  // linearizing transformation, when listed
    OdeSpec target;
};

inline Expr E(const std::string& s, const ParameterTable& t = {}) { return parse(s, t); }

inline VectorField VF(const std::string& xi, const std::string& eta,
                      const ParameterTable& t = {}) {
    return {parse(xi, t), parse(eta, t)};
}

// Four-dimensional solvable algebra; the printed equation drops a y' from the
// 3y'y'' term, and the fourth generator needs an x factor (phi = x e^x is what
// satisfies phi''' / phi'' = (x+3)/(x+2); plain e^{x-y} dy is not a symmetry).
inline Example class1() {
    Example ex;
    ex.name = "class1";
    ex.ode = {3, E("((x+3)*(y'' + y'^2) - (x+2)*(3*y'*y'' + y'^3))/(x+2)")};
    ex.gens = {VF("0", "1"), VF("0", "exp(-y)"), VF("0", "x*exp(-y)"), VF("0", "x*exp(x-y)")};
    ex.transform = {E("x"), E("exp(y)"), std::pair<Expr, Expr>{E("x"), E("log(y)")}};
    ex.target = {3, E("(x+3)/(x+2)*y''")};
    return ex;
}

// Five-dimensional solvable, complex eigenvalue subcase.
inline Example class2a() {
    Example ex;
    ex.name = "class2a";
    ex.ode = {3, E("3*y''^2/y' + x*y'^4")};
    ex.gens = {VF("0", "1"), VF("x", "0"), VF("exp(-y)", "0"),
               VF("exp(y/2)*sin(3^(1/2)*y/2)", "0"), VF("exp(y/2)*cos(3^(1/2)*y/2)", "0")};
    // canonical coordinates x = e^{-r} v, y = r
    ex.transform = {E("y"), E("x*exp(y)"), std::pair<Expr, Expr>{E("exp(-x)*y"), E("x")}};
    ex.target = {3, E("3*y'' - 3*y'")};
    return ex;
}

inline Example class2b() {
    Example ex;
    ex.name = "class2b";
    ex.ode = {3, E("(x*y'^5 + y'^4 - y''*y'^2 + 3*y''^2)/y'")};
    ex.gens = {VF("0", "1"), VF("x", "0"), VF("sin(y)", "0"), VF("cos(y)", "0"),
               VF("exp(-y)", "0")};
    ex.transform = {E("y"), E("x*exp(y)"), std::pair<Expr, Expr>{E("exp(-x)*y"), E("x")}};
    ex.target = {3, E("2*y'' - 2*y'")};
    return ex;
}

// Seven-dimensional (maximal for N = 3); parameter a with 9b = a^2 - 3a. The
// last generator is taken as (x^2/2) dx + (3xy/(a+3)) dy: the printed form has
// two dx terms, which cannot close under brackets.
inline Example class3(Rational a_sample = Rational(2)) {
    Example ex;
    ex.name = "class3";
    ex.params.declare({"a", a_sample, "a != -3"});
    const ParameterTable& t = ex.params;
    ex.ode = {3, E("-(a*y*y'*y'' + (a^2-3*a)/9*y'^3)/y^2", t)};
    ex.gens = {VF("x", "0", t),
               VF("1", "0", t),
               VF("0", "y", t),
               VF("0", "y^(0-a/3)", t),
               VF("0", "x*y^(0-a/3)", t),
               VF("0", "x^2*y^(0-a/3)", t),
               VF("x^2/2", "3*x*y/(a+3)", t)};
    // the transformation with x-tilde = -2/x is the one that verifies; the
    // components are listed swapped in the source write-up
    ex.transform = {E("-2/x", t), E("6*y^((a+3)/3)/((a+3)*x^2)", t), std::nullopt};
    ex.target = {3, E("0", t)};
    return ex;
}

// Fourth order, maximal (dim 8 = N + 4); a = k + 1.
inline Example fourth(Rational a_sample = Rational(4)) {
    Example ex;
    ex.name = "fourth";
    ex.params.declare({"a", a_sample, "a = k+1, k != 0"});
    const ParameterTable& t = ex.params;
    ex.ode = {4,
              E("-(4*(a-1)*y^2*y'*y''' + 3*(a-1)*y^2*y''^2 + 6*(a-1)*(a-2)*y*y'^2*y'' "
                "+ (a-1)*(a-2)*(a-3)*y'^4)/y^3",
                t)};
    ex.gens = {VF("x", "0", t),     VF("1", "0", t),
               VF("0", "y", t),     VF("0", "y^(1-a)", t),
               VF("0", "x*y^(1-a)", t), VF("0", "x^2*y^(1-a)", t),
               VF("0", "x^3*y^(1-a)", t), VF("a*x^2", "3*x*y", t)};
    ex.transform = {E("x", t), E("y^a/a", t), std::nullopt};
    ex.target = {4, E("0", t)};
    return ex;
}

// Fifth order, maximal (dim 9 = N + 4); the source listing omits dy, which is
// needed both for closure and for the dimension count.
inline Example fifth() {
    Example ex;
    ex.name = "fifth";
    ex.ode = {5, E("(15*y'^2*y''*y^(4) + 10*y'^2*y'''^2 - 105*y'*y''^2*y''' + 105*y''^4)/y'^3")};
    ex.gens = {VF("1", "0"),   VF("x", "0"),   VF("0", "y"),
               VF("y", "0"),   VF("y^2", "0"), VF("y^3", "0"),
               VF("y^4", "0"), VF("4*x*y", "y^2"), VF("0", "1")};
    ex.transform = {E("y"), E("x"), std::pair<Expr, Expr>{E("y"), E("x")}};
    ex.target = {5, E("0")};
    return ex;
}

// Symmetry algebra of y^(N) = 0: sl(2) part plus the N+1 dimensional radical.
inline Example canonical(int N) {
    Example ex;
    ex.name = "canonical" + std::to_string(N);
    ex.ode = {N, E("0")};
    std::string d = std::to_string(N - 1);
    ex.gens = {VF("1", "0"), VF("x^2/2", d + "*x*y/2"), VF("x", d + "*y/2")};
    for (int a = 0; a < N; ++a)
        ex.gens.push_back(VF("0", a == 0 ? "1" : "x^" + std::to_string(a)));
    ex.gens.push_back(VF("0", "y"));
    ex.transform = {E("x"), E("y"), std::pair<Expr, Expr>{E("x"), E("y")}};
    ex.target = ex.ode;
    return ex;
}

}  // namespace fixtures
