#pragma once

#include "linsym/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace linsym {

enum class NodeKind { Num, Sym, Add, Mul, Pow, Fn };
enum class FnKind { Exp, Sin, Cos, Log };

class Expr;
using ExprList = std::vector<Expr>;

struct ExprNode;

// Immutable symbolic expression. Copies share structure.
class Expr {
public:
    Expr();  // zero

    static Expr num(Rational q);
    static Expr num(long v) { return num(Rational(v)); }
    static Expr sym(std::string name);
    static Expr add(ExprList terms);
    static Expr mul(ExprList factors);
    static Expr pow(Expr base, Expr exponent);
    static Expr fn(FnKind f, Expr arg);

    NodeKind kind() const;
    const Rational& value() const;       // Num
    const std::string& name() const;     // Sym
    FnKind fn_kind() const;              // Fn
    const ExprList& kids() const;

    bool is_num(const Rational& q) const { return kind() == NodeKind::Num && value() == q; }
    bool is_zero_literal() const { return is_num(Rational(0)); }
    bool is_one_literal() const { return is_num(Rational(1)); }

    const ExprNode* raw() const { return node_.get(); }

private:
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;
};

// Total order on expression trees; defines the deterministic normal form.
int compare(const Expr& x, const Expr& y);
inline bool operator==(const Expr& x, const Expr& y) { return compare(x, y) == 0; }
inline bool operator!=(const Expr& x, const Expr& y) { return compare(x, y) != 0; }
struct ExprLess {
    bool operator()(const Expr& x, const Expr& y) const { return compare(x, y) < 0; }
};

// Deterministic normal form: flattened sums/products, collected rational
// coefficients, merged powers and exponentials, products expanded over sums,
// terms and factors sorted. Idempotent.
Expr normalize(const Expr& e);

Expr differentiate(const Expr& e, const std::string& var);
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

bool depends_on(const Expr& e, const std::string& var);
void free_symbols(const Expr& e, std::set<std::string>& out);

std::string to_string(const Expr& e);

struct EvalError {
    std::string message;
};

// Floating evaluation; throws EvalError on domain violations. max_mag tracks the
// largest magnitude seen at any subterm (used by the probabilistic zero test).
double eval_numeric(const Expr& e, const std::map<std::string, double>& point,
                    double* max_mag = nullptr);

// Convenience builders
Expr operator+(const Expr& x, const Expr& y);
Expr operator-(const Expr& x, const Expr& y);
Expr operator-(const Expr& x);
Expr operator*(const Expr& x, const Expr& y);
Expr operator/(const Expr& x, const Expr& y);

struct Param {
    std::string name;
    std::optional<Rational> sample;
    std::string note;  // free-text constraint, e.g. "a != -3"
};

class ParameterTable {
public:
    void declare(Param p);
    bool declared(const std::string& name) const;
    const Param* find(const std::string& name) const;
    const std::vector<Param>& all() const { return params_; }
    std::map<std::string, Expr> sample_bindings() const;
    long long extension_disc = 0;  // declared quadratic extension, 0 = none

private:
    std::vector<Param> params_;
};

enum class ZeroPath { Canonical, Probabilistic };
enum class ZeroResult { Zero, NonZero, Indeterminate };

struct ZeroTest {
    ZeroResult result;
    ZeroPath path;
    std::string note;
    bool zero() const { return result == ZeroResult::Zero; }
};

using Rng = std::mt19937_64;

// Per-variable random rational in [-3,3] with denominator <= 7.
Rational random_sample(Rng& rng, bool positive_only);

// Zero test: canonical normalization first, then (with parameters bound to their
// samples) numeric evaluation at >= 8 random rational points with relative
// tolerance 1e-9. Never silently true: evaluation failure everywhere is reported
// as Indeterminate.
ZeroTest is_zero_test(const Expr& e, const ParameterTable& params, Rng& rng);
bool is_zero(const Expr& e, const ParameterTable& params, Rng& rng);

}  // namespace linsym
