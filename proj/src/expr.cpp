#include "linsym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linsym {

struct ExprNode {
    NodeKind kind;
    Rational value;
    std::string name;
    FnKind fn{FnKind::Exp};
    ExprList kids;
};

namespace {

std::shared_ptr<const ExprNode> make_node(ExprNode n) {
    return std::make_shared<const ExprNode>(std::move(n));
}

const Rational kZero(0), kOne(1);

}  // namespace

Expr::Expr() : node_(make_node({NodeKind::Num, Rational(0), "", FnKind::Exp, {}})) {}

Expr Expr::num(Rational q) { return Expr(make_node({NodeKind::Num, std::move(q), "", FnKind::Exp, {}})); }
Expr Expr::sym(std::string n) { return Expr(make_node({NodeKind::Sym, Rational(0), std::move(n), FnKind::Exp, {}})); }
Expr Expr::add(ExprList t) { return Expr(make_node({NodeKind::Add, Rational(0), "", FnKind::Exp, std::move(t)})); }
Expr Expr::mul(ExprList f) { return Expr(make_node({NodeKind::Mul, Rational(0), "", FnKind::Exp, std::move(f)})); }
Expr Expr::pow(Expr b, Expr e) { return Expr(make_node({NodeKind::Pow, Rational(0), "", FnKind::Exp, {std::move(b), std::move(e)}})); }
Expr Expr::fn(FnKind f, Expr a) { return Expr(make_node({NodeKind::Fn, Rational(0), "", f, {std::move(a)}})); }

NodeKind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
FnKind Expr::fn_kind() const { return node_->fn; }
const ExprList& Expr::kids() const { return node_->kids; }

int compare(const Expr& x, const Expr& y) {
    if (x.raw() == y.raw()) return 0;
    if (x.kind() != y.kind()) return x.kind() < y.kind() ? -1 : 1;
    switch (x.kind()) {
        case NodeKind::Num:
            if (x.value() == y.value()) return 0;
            return x.value() < y.value() ? -1 : 1;
        case NodeKind::Sym:
            return x.name().compare(y.name()) < 0 ? -1 : (x.name() == y.name() ? 0 : 1);
        case NodeKind::Fn:
            if (x.fn_kind() != y.fn_kind()) return x.fn_kind() < y.fn_kind() ? -1 : 1;
            [[fallthrough]];
        default: {
            const auto& a = x.kids();
            const auto& b = y.kids();
            if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
            for (size_t i = 0; i < a.size(); ++i) {
                int c = compare(a[i], b[i]);
                if (c != 0) return c;
            }
            return 0;
        }
    }
}

Expr operator+(const Expr& x, const Expr& y) { return normalize(Expr::add({x, y})); }
Expr operator-(const Expr& x, const Expr& y) { return normalize(Expr::add({x, Expr::mul({Expr::num(-1L), y})})); }
Expr operator-(const Expr& x) { return normalize(Expr::mul({Expr::num(-1L), x})); }
Expr operator*(const Expr& x, const Expr& y) { return normalize(Expr::mul({x, y})); }
Expr operator/(const Expr& x, const Expr& y) { return normalize(Expr::mul({x, Expr::pow(y, Expr::num(-1L))})); }

namespace {

// Split a normalized non-Add expression into rational coefficient and monomial.
std::pair<Rational, Expr> split_coeff(const Expr& t) {
    if (t.kind() == NodeKind::Num) return {t.value(), Expr::num(1L)};
    if (t.kind() == NodeKind::Mul && !t.kids().empty() && t.kids()[0].kind() == NodeKind::Num) {
        ExprList rest(t.kids().begin() + 1, t.kids().end());
        if (rest.size() == 1) return {t.kids()[0].value(), rest[0]};
        return {t.kids()[0].value(), Expr::mul(std::move(rest))};
    }
    return {Rational(1), t};
}

Expr with_coeff(const Rational& c, const Expr& mono) {
    if (c == 0) return Expr::num(0L);
    if (mono.is_one_literal()) return Expr::num(c);
    if (c == 1) return mono;
    ExprList f;
    f.push_back(Expr::num(c));
    if (mono.kind() == NodeKind::Mul) {
        for (const auto& k : mono.kids()) f.push_back(k);
    } else {
        f.push_back(mono);
    }
    return Expr::mul(std::move(f));
}

Expr normalize_add(ExprList terms);
Expr normalize_mul(ExprList factors);
Expr normalize_pow(Expr base, Expr expo);
Expr normalize_fn(FnKind f, Expr arg);

constexpr size_t kExpandLimit = 4096;

// factors are normalized, none is Add.
Expr assemble_mul(ExprList factors) {
    Rational coeff(1);
    // base -> list of exponents
    std::map<Expr, ExprList, ExprLess> powers;
    ExprList exp_args;  // accumulated arguments of exp factors

    auto add_factor = [&](const Expr& f, auto&& self) -> void {
        switch (f.kind()) {
            case NodeKind::Num:
                coeff *= f.value();
                return;
            case NodeKind::Mul:
                for (const auto& k : f.kids()) self(k, self);
                return;
            case NodeKind::Fn:
                if (f.fn_kind() == FnKind::Exp) {
                    exp_args.push_back(f.kids()[0]);
                    return;
                }
                powers[f].push_back(Expr::num(1L));
                return;
            case NodeKind::Pow:
                powers[f.kids()[0]].push_back(f.kids()[1]);
                return;
            default:
                powers[f].push_back(Expr::num(1L));
                return;
        }
    };
    for (const auto& f : factors) add_factor(f, add_factor);
    if (coeff == 0) return Expr::num(0L);

    ExprList out;
    for (auto& [base, exps] : powers) {
        Expr e = exps.size() == 1 ? exps[0] : normalize_add(std::move(exps));
        if (e.is_zero_literal()) continue;
        if (base.kind() == NodeKind::Num && e.kind() == NodeKind::Num && is_integer(e.value())) {
            long k = e.value().convert_to<long>();
            if (base.value() != 0 || k > 0) {
                coeff *= rational_pow(base.value(), k);
                continue;
            }
        }
        if (e.is_one_literal()) {
            out.push_back(base);
        } else {
            out.push_back(normalize_pow(base, e));
        }
    }
    if (!exp_args.empty()) {
        Expr a = normalize_add(std::move(exp_args));
        Expr ef = normalize_fn(FnKind::Exp, a);
        if (!ef.is_one_literal()) out.push_back(ef);
    }
    // A merged power may itself have become numeric/Mul; re-run if so.  An Add
    // only warrants a re-run when normalize_mul would actually distribute it --
    // otherwise the two functions bounce the same factor list back and forth.
    bool redo = false;
    size_t add_size = 1;
    for (const auto& f : out) {
        if (f.kind() == NodeKind::Num || f.kind() == NodeKind::Mul) redo = true;
        if (f.kind() == NodeKind::Add) add_size *= f.kids().size();
    }
    if (add_size > 1 && add_size <= kExpandLimit) redo = true;
    if (redo) {
        out.push_back(Expr::num(coeff));
        return normalize_mul(std::move(out));
    }
    std::sort(out.begin(), out.end(), ExprLess{});
    if (out.empty()) return Expr::num(coeff);
    if (coeff == 1 && out.size() == 1) return out[0];
    if (coeff != 1) out.insert(out.begin(), Expr::num(coeff));
    if (out.size() == 1) return out[0];
    return Expr::mul(std::move(out));
}

// factors normalized; distributes over any Add factors.
Expr normalize_mul(ExprList factors) {
    // flatten and look for Add factors
    ExprList flat;
    bool has_add = false;
    size_t add_size = 1;
    auto flatten = [&](const Expr& f, auto&& self) -> void {
        if (f.kind() == NodeKind::Mul) {
            for (const auto& k : f.kids()) self(k, self);
        } else {
            if (f.kind() == NodeKind::Add) {
                has_add = true;
                add_size *= f.kids().size();
            }
            flat.push_back(f);
        }
    };
    for (const auto& f : factors) flatten(f, flatten);

    if (has_add && add_size <= kExpandLimit) {
        ExprList terms{Expr::num(1L)};
        for (const auto& f : flat) {
            if (f.kind() == NodeKind::Add) {
                ExprList next;
                next.reserve(terms.size() * f.kids().size());
                for (const auto& t : terms)
                    for (const auto& s : f.kids()) next.push_back(assemble_mul({t, s}));
                terms = std::move(next);
            } else {
                for (auto& t : terms) t = assemble_mul({t, f});
            }
        }
        return normalize_add(std::move(terms));
    }
    return assemble_mul(std::move(flat));
}

Expr normalize_add(ExprList terms) {
    std::map<Expr, Rational, ExprLess> acc;
    auto add_term = [&](const Expr& t, auto&& self) -> void {
        if (t.kind() == NodeKind::Add) {
            for (const auto& k : t.kids()) self(k, self);
            return;
        }
        auto [c, mono] = split_coeff(t);
        auto it = acc.find(mono);
        if (it == acc.end()) acc.emplace(mono, c);
        else it->second += c;
    };
    for (const auto& t : terms) add_term(t, add_term);
    ExprList out;
    for (const auto& [mono, c] : acc) {
        if (c == 0) continue;
        out.push_back(with_coeff(c, mono));
    }
    if (out.empty()) return Expr::num(0L);
    if (out.size() == 1) return out[0];
    std::sort(out.begin(), out.end(), ExprLess{});
    return Expr::add(std::move(out));
}

Expr normalize_pow(Expr base, Expr expo) {
    if (expo.is_zero_literal()) return Expr::num(1L);
    if (expo.is_one_literal()) return base;
    if (base.is_one_literal()) return Expr::num(1L);
    if (base.is_zero_literal()) {
        if (expo.kind() == NodeKind::Num && expo.value() > 0) return Expr::num(0L);
        return Expr::pow(base, expo);  // 0^negative left for eval to reject
    }
    if (base.kind() == NodeKind::Num && expo.kind() == NodeKind::Num) {
        const Rational& q = expo.value();
        if (is_integer(q)) return Expr::num(rational_pow(base.value(), q.convert_to<long>()));
        // extract perfect-power content of rational^)p/q): only exact full roots
        if (base.value() > 0 && den(q) == 2) {
            if (auto r = rational_sqrt(base.value())) {
                return normalize_pow(Expr::num(*r), Expr::num(q * 2));
            }
        }
    }
    if (base.kind() == NodeKind::Pow) {
        if (expo.kind() == NodeKind::Num && is_integer(expo.value())) {
            Expr inner = normalize_mul({base.kids()[1], expo});
            return normalize_pow(base.kids()[0], inner);
        }
        return Expr::pow(std::move(base), std::move(expo));
    }
    if (base.kind() == NodeKind::Fn && base.fn_kind() == FnKind::Exp) {
        return normalize_fn(FnKind::Exp, normalize_mul({base.kids()[0], expo}));
    }
    if (expo.kind() == NodeKind::Num && is_integer(expo.value())) {
        long k = expo.value().convert_to<long>();
        if (base.kind() == NodeKind::Mul) {
            ExprList fs;
            for (const auto& f : base.kids()) fs.push_back(normalize_pow(f, expo));
            return normalize_mul(std::move(fs));
        }
        if (base.kind() == NodeKind::Add && k > 1 && k <= 8) {
            size_t est = 1;
            for (long i = 0; i < k; ++i) est *= base.kids().size();
            if (est <= kExpandLimit) {
                ExprList fs(static_cast<size_t>(k), base);
                return normalize_mul(std::move(fs));
            }
        }
    }
    return Expr::pow(std::move(base), std::move(expo));
}

// Canonical sign of a normalized expression: the sign of the coefficient of
// its ExprLess-least monomial. Stable under negation, so sign extraction from
// sin/cos arguments cannot oscillate.
bool leading_negative(const Expr& e) {
    if (e.kind() != NodeKind::Add) {
        auto [c, mono] = split_coeff(e);
        return c < 0;
    }
    bool have = false;
    Expr least = Expr::num(0L);
    Rational sign(0);
    for (const auto& t : e.kids()) {
        auto [c, mono] = split_coeff(t);
        if (!have || compare(mono, least) < 0) {
            have = true;
            least = mono;
            sign = c;
        }
    }
    return sign < 0;
}

Expr normalize_fn(FnKind f, Expr arg) {
    switch (f) {
        case FnKind::Exp:
            if (arg.is_zero_literal()) return Expr::num(1L);
            if (arg.kind() == NodeKind::Fn && arg.fn_kind() == FnKind::Log) return arg.kids()[0];
            break;
        case FnKind::Log:
            if (arg.is_one_literal()) return Expr::num(0L);
            if (arg.kind() == NodeKind::Fn && arg.fn_kind() == FnKind::Exp) return arg.kids()[0];
            break;
        case FnKind::Sin:
            if (arg.is_zero_literal()) return Expr::num(0L);
            if (leading_negative(arg)) {
                Expr inner = normalize_mul({Expr::num(-1L), arg});
                return normalize_mul({Expr::num(-1L), Expr::fn(FnKind::Sin, inner)});
            }
            break;
        case FnKind::Cos:
            if (arg.is_zero_literal()) return Expr::num(1L);
            if (leading_negative(arg)) {
                Expr inner = normalize_mul({Expr::num(-1L), arg});
                return Expr::fn(FnKind::Cos, inner);
            }
            break;
    }
    return Expr::fn(f, std::move(arg));
}

}  // namespace

Expr normalize(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Num:
        case NodeKind::Sym:
            return e;
        case NodeKind::Fn:
            return normalize_fn(e.fn_kind(), normalize(e.kids()[0]));
        case NodeKind::Pow:
            return normalize_pow(normalize(e.kids()[0]), normalize(e.kids()[1]));
        case NodeKind::Mul: {
            ExprList fs;
            fs.reserve(e.kids().size());
            for (const auto& k : e.kids()) fs.push_back(normalize(k));
            return normalize_mul(std::move(fs));
        }
        case NodeKind::Add: {
            ExprList ts;
            ts.reserve(e.kids().size());
            for (const auto& k : e.kids()) ts.push_back(normalize(k));
            return normalize_add(std::move(ts));
        }
    }
    return e;
}

namespace {

Expr diff_raw(const Expr& e, const std::string& var) {
    switch (e.kind()) {
        case NodeKind::Num:
            return Expr::num(0L);
        case NodeKind::Sym:
            return Expr::num(e.name() == var ? 1L : 0L);
        case NodeKind::Add: {
            ExprList ts;
            for (const auto& k : e.kids()) ts.push_back(diff_raw(k, var));
            return Expr::add(std::move(ts));
        }
        case NodeKind::Mul: {
            ExprList ts;
            for (size_t i = 0; i < e.kids().size(); ++i) {
                ExprList fs = e.kids();
                fs[i] = diff_raw(e.kids()[i], var);
                ts.push_back(Expr::mul(std::move(fs)));
            }
            return Expr::add(std::move(ts));
        }
        case NodeKind::Pow: {
            const Expr& u = e.kids()[0];
            const Expr& v = e.kids()[1];
            bool vdep = depends_on(v, var);
            bool udep = depends_on(u, var);
            if (!vdep) {
                if (!udep) return Expr::num(0L);
                // v * u^(v-1) * u'
                Expr vm1 = Expr::add({v, Expr::num(-1L)});
                return Expr::mul({v, Expr::pow(u, vm1), diff_raw(u, var)});
            }
            // u^v * (v' log u + v u'/u)
            Expr term1 = Expr::mul({diff_raw(v, var), Expr::fn(FnKind::Log, u)});
            Expr term2 = Expr::mul({v, diff_raw(u, var), Expr::pow(u, Expr::num(-1L))});
            return Expr::mul({e, Expr::add({term1, term2})});
        }
        case NodeKind::Fn: {
            const Expr& u = e.kids()[0];
            Expr du = diff_raw(u, var);
            switch (e.fn_kind()) {
                case FnKind::Exp: return Expr::mul({e, du});
                case FnKind::Sin: return Expr::mul({Expr::fn(FnKind::Cos, u), du});
                case FnKind::Cos: return Expr::mul({Expr::num(-1L), Expr::fn(FnKind::Sin, u), du});
                case FnKind::Log: return Expr::mul({du, Expr::pow(u, Expr::num(-1L))});
            }
        }
    }
    return Expr::num(0L);
}

Expr subst_raw(const Expr& e, const std::map<std::string, Expr>& b) {
    switch (e.kind()) {
        case NodeKind::Num:
            return e;
        case NodeKind::Sym: {
            auto it = b.find(e.name());
            return it == b.end() ? e : it->second;
        }
        default: {
            ExprList ks;
            ks.reserve(e.kids().size());
            for (const auto& k : e.kids()) ks.push_back(subst_raw(k, b));
            switch (e.kind()) {
                case NodeKind::Add: return Expr::add(std::move(ks));
                case NodeKind::Mul: return Expr::mul(std::move(ks));
                case NodeKind::Pow: return Expr::pow(ks[0], ks[1]);
                default: return Expr::fn(e.fn_kind(), ks[0]);
            }
        }
    }
}

}  // namespace

Expr differentiate(const Expr& e, const std::string& var) {
    return normalize(diff_raw(normalize(e), var));
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
    return normalize(subst_raw(e, bindings));
}

bool depends_on(const Expr& e, const std::string& var) {
    if (e.kind() == NodeKind::Sym) return e.name() == var;
    for (const auto& k : e.kids())
        if (depends_on(k, var)) return true;
    return false;
}

void free_symbols(const Expr& e, std::set<std::string>& out) {
    if (e.kind() == NodeKind::Sym) {
        out.insert(e.name());
        return;
    }
    for (const auto& k : e.kids()) free_symbols(k, out);
}

namespace {

double track(double v, double* mm) {
    if (!std::isfinite(v)) throw EvalError{"non-finite intermediate value"};
    if (mm && std::fabs(v) > *mm) *mm = std::fabs(v);
    return v;
}

}  // namespace

double eval_numeric(const Expr& e, const std::map<std::string, double>& point, double* max_mag) {
    switch (e.kind()) {
        case NodeKind::Num:
            return track(to_double(e.value()), max_mag);
        case NodeKind::Sym: {
            auto it = point.find(e.name());
            if (it == point.end()) throw EvalError{"unbound symbol '" + e.name() + "'"};
            return track(it->second, max_mag);
        }
        case NodeKind::Add: {
            double s = 0;
            for (const auto& k : e.kids()) s += eval_numeric(k, point, max_mag);
            return track(s, max_mag);
        }
        case NodeKind::Mul: {
            double s = 1;
            for (const auto& k : e.kids()) s *= eval_numeric(k, point, max_mag);
            return track(s, max_mag);
        }
        case NodeKind::Pow: {
            double b = eval_numeric(e.kids()[0], point, max_mag);
            double x = eval_numeric(e.kids()[1], point, max_mag);
            if (b == 0 && x <= 0) throw EvalError{"zero raised to nonpositive power"};
            if (b < 0) {
                // allow only integral exponents for negative bases
                if (std::fabs(x - std::round(x)) > 1e-12) throw EvalError{"negative base with non-integer exponent"};
                return track(std::pow(b, std::round(x)), max_mag);
            }
            return track(std::pow(b, x), max_mag);
        }
        case NodeKind::Fn: {
            double a = eval_numeric(e.kids()[0], point, max_mag);
            switch (e.fn_kind()) {
                case FnKind::Exp:
                    if (a > 300) throw EvalError{"exp overflow"};
                    return track(std::exp(a), max_mag);
                case FnKind::Sin: return track(std::sin(a), max_mag);
                case FnKind::Cos: return track(std::cos(a), max_mag);
                case FnKind::Log:
                    if (a <= 0) throw EvalError{"log of nonpositive value"};
                    return track(std::log(a), max_mag);
            }
        }
    }
    throw EvalError{"unreachable"};
}

void ParameterTable::declare(Param p) {
    for (auto& q : params_) {
        if (q.name == p.name) {
            q = std::move(p);
            return;
        }
    }
    params_.push_back(std::move(p));
}

bool ParameterTable::declared(const std::string& name) const { return find(name) != nullptr; }

const Param* ParameterTable::find(const std::string& name) const {
    for (const auto& p : params_)
        if (p.name == name) return &p;
    return nullptr;
}

std::map<std::string, Expr> ParameterTable::sample_bindings() const {
    std::map<std::string, Expr> b;
    for (const auto& p : params_)
        if (p.sample) b.emplace(p.name, Expr::num(*p.sample));
    return b;
}

Rational random_sample(Rng& rng, bool positive_only) {
    std::uniform_int_distribution<int> numer(positive_only ? 1 : -21, 21);
    std::uniform_int_distribution<int> denom(1, 7);
    int n = numer(rng);
    if (n == 0) n = 1;
    return Rational(n, denom(rng));
}

ZeroTest is_zero_test(const Expr& e, const ParameterTable& params, Rng& rng) {
    Expr n = normalize(e);
    if (n.is_zero_literal()) return {ZeroResult::Zero, ZeroPath::Canonical, "normalizes to 0"};
    Expr s = substitute(n, params.sample_bindings());
    if (s.is_zero_literal()) return {ZeroResult::Zero, ZeroPath::Canonical, "normalizes to 0 at parameter samples"};

    std::set<std::string> syms;
    free_symbols(s, syms);
    for (const auto& name : syms) {
        if (params.declared(name))
            return {ZeroResult::Indeterminate, ZeroPath::Probabilistic,
                    "parameter '" + name + "' has no sample value"};
    }

    const int wanted = 8;
    int good = 0;
    for (int attempt = 0; attempt < 400 && good < wanted; ++attempt) {
        std::map<std::string, double> point;
        bool positive_only = attempt % 2 == 1;
        for (const auto& name : syms) point[name] = to_double(random_sample(rng, positive_only));
        try {
            double mm = 0;
            double v = eval_numeric(s, point, &mm);
            if (std::fabs(v) >= 1e-9 * (1.0 + mm))
                return {ZeroResult::NonZero, ZeroPath::Probabilistic,
                        "nonzero at sample point (|value| = " + std::to_string(std::fabs(v)) + ")"};
            ++good;
        } catch (const EvalError&) {
            continue;  // singular point, resample
        }
    }
    if (good < wanted)
        return {ZeroResult::Indeterminate, ZeroPath::Probabilistic,
                "expression singular at nearly all sample points"};
    return {ZeroResult::Zero, ZeroPath::Probabilistic, "vanishes at 8 random points"};
}

bool is_zero(const Expr& e, const ParameterTable& params, Rng& rng) {
    return is_zero_test(e, params, rng).zero();
}

}  // namespace linsym

namespace linsym {

namespace {

// precedence: 0 sum, 1 product, 2 power, 3 atom
std::string pr(const Expr& e, int prec);

std::string paren(const std::string& s) { return "(" + s + ")"; }

// pull a leading minus out of a normalized term for sum printing
std::pair<bool, Expr> strip_sign(const Expr& t) {
    if (t.kind() == NodeKind::Num && t.value() < 0) return {true, Expr::num(-t.value())};
    if (t.kind() == NodeKind::Mul && t.kids()[0].kind() == NodeKind::Num && t.kids()[0].value() < 0) {
        ExprList ks = t.kids();
        Rational c = -ks[0].value();
        if (c == 1) {
            ks.erase(ks.begin());
            return {true, ks.size() == 1 ? ks[0] : Expr::mul(std::move(ks))};
        }
        ks[0] = Expr::num(c);
        return {true, Expr::mul(std::move(ks))};
    }
    return {false, t};
}

std::string pr(const Expr& e, int prec) {
    switch (e.kind()) {
        case NodeKind::Num: {
            std::string s = rational_to_string(e.value());
            if (prec >= 2 && (e.value() < 0 || !is_integer(e.value()))) return paren(s);
            if (prec >= 1 && e.value() < 0) return paren(s);
            return s;
        }
        case NodeKind::Sym:
            return e.name();
        case NodeKind::Add: {
            std::string s;
            bool first = true;
            for (const auto& t : e.kids()) {
                auto [neg, body] = strip_sign(t);
                if (first) {
                    s += (neg ? "-" : "") + pr(body, 1);
                    first = false;
                } else {
                    s += (neg ? " - " : " + ") + pr(body, 1);
                }
            }
            return prec >= 1 ? paren(s) : s;
        }
        case NodeKind::Mul: {
            std::string s;
            bool first = true;
            for (const auto& f : e.kids()) {
                if (!first) s += "*";
                s += pr(f, 2);
                first = false;
            }
            return prec >= 2 ? paren(s) : s;
        }
        case NodeKind::Pow: {
            const Expr& b = e.kids()[0];
            const Expr& x = e.kids()[1];
            std::string bs = b.kind() == NodeKind::Pow ? paren(pr(b, 0)) : pr(b, 3);
            std::string xs;
            if (x.kind() == NodeKind::Num && is_integer(x.value()) && x.value() > 0)
                xs = rational_to_string(x.value());
            else
                xs = paren(pr(x, 0));
            return bs + "^" + xs;
        }
        case NodeKind::Fn: {
            const char* n = "exp";
            switch (e.fn_kind()) {
                case FnKind::Exp: n = "exp"; break;
                case FnKind::Sin: n = "sin"; break;
                case FnKind::Cos: n = "cos"; break;
                case FnKind::Log: n = "log"; break;
            }
            return std::string(n) + paren(pr(e.kids()[0], 0));
        }
    }
    return "?";
}

}  // namespace

std::string to_string(const Expr& e) { return pr(e, 0); }

}  // namespace linsym
