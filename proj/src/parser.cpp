#include "linsym/parser.hpp"

#include <cctype>

namespace linsym {

namespace {

struct Cursor {
    const std::string& text;
    const ParameterTable& params;
    const ParseOptions& opts;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError{msg, pos}; }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr() {
        bool neg = false;
        if (peek() == '-') {
            ++pos;
            neg = true;
        } else {
            accept('+');
        }
        Expr e = term();
        if (neg) e = Expr::mul({Expr::num(-1L), e});
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                e = Expr::add({e, term()});
            } else if (c == '-') {
                ++pos;
                e = Expr::add({e, Expr::mul({Expr::num(-1L), term()})});
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos;
                e = Expr::mul({e, factor()});
            } else if (c == '/') {
                ++pos;
                e = Expr::mul({e, Expr::pow(factor(), Expr::num(-1L))});
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        Expr b = base();
        if (peek() == '^') {
            ++pos;
            return Expr::pow(b, factor());
        }
        return b;
    }

    Expr base() {
        char c = peek();
        if (c == '(') {
            ++pos;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
        fail("expected a number, identifier, or '('");
    }

    Expr number() {
        size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        auto q = parse_rational(text.substr(start, pos - start));
        if (!q) {
            pos = start;
            fail("malformed number");
        }
        return Expr::num(*q);
    }

    Expr ident() {
        size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);

        if (name == "exp" || name == "sin" || name == "cos" || name == "log" || name == "sqrt") {
            if (peek() != '(') {
                pos = start;
                fail("function '" + name + "' needs an argument list");
            }
            ++pos;
            Expr a = expr();
            expect(')');
            if (name == "sqrt") return Expr::pow(a, Expr::num(Rational(1, 2)));
            FnKind f = name == "exp"   ? FnKind::Exp
                       : name == "sin" ? FnKind::Sin
                       : name == "cos" ? FnKind::Cos
                                       : FnKind::Log;
            return Expr::fn(f, a);
        }

        if (name == opts.dependent && !opts.dependent.empty()) {
            // jet suffixes: primes, or ^(k) with a bare integer
            if (pos < text.size() && text[pos] == '\'') {
                int k = 0;
                while (pos < text.size() && text[pos] == '\'') {
                    ++k;
                    ++pos;
                }
                return jet(k, start);
            }
            size_t save = pos;
            if (pos + 1 < text.size() && text[pos] == '^' && text[pos + 1] == '(') {
                pos += 2;
                size_t dstart = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                if (pos > dstart && pos < text.size() && text[pos] == ')') {
                    int k = std::stoi(text.substr(dstart, pos - dstart));
                    ++pos;
                    return jet(k, start);
                }
                pos = save;  // not a jet; fall through to plain power parsing
            }
            return Expr::sym(name);
        }

        if (opts.symbols.count(name) || params.declared(name)) return Expr::sym(name);

        // internal jet names (y1, y2, ...) are accepted so printed forms re-parse
        if (!opts.dependent.empty() && name.size() > opts.dependent.size() &&
            name.compare(0, opts.dependent.size(), opts.dependent) == 0) {
            std::string tail = name.substr(opts.dependent.size());
            bool digits = !tail.empty();
            for (char t : tail)
                if (!std::isdigit(static_cast<unsigned char>(t))) digits = false;
            if (digits) {
                int k = std::stoi(tail);
                if (k >= 1 && k <= opts.max_jet) return Expr::sym(name);
            }
        }

        pos = start;
        fail("undeclared identifier '" + name + "'");
    }

    Expr jet(int k, size_t start) {
        if (k < 1 || k > opts.max_jet) {
            pos = start;
            fail("jet order out of range");
        }
        return Expr::sym(opts.dependent + std::to_string(k));
    }
};

}  // namespace

Expr parse(const std::string& text, const ParameterTable& params, const ParseOptions& opts) {
    Cursor c{text, params, opts};
    Expr e = c.expr();
    c.skip_ws();
    if (c.pos != text.size()) c.fail("unexpected trailing input");
    return normalize(e);
}

Expr parse(const std::string& text, const ParameterTable& params) {
    return parse(text, params, ParseOptions{});
}

}  // namespace linsym
