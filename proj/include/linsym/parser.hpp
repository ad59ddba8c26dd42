#pragma once

#include "linsym/expr.hpp"

#include <set>
#include <string>

namespace linsym {

struct ParseError {
    std::string message;
    size_t position;  // byte offset into the input
};

struct ParseOptions {
    std::set<std::string> symbols{"x", "y"};  // allowed idents besides parameters
    std::string dependent = "y";              // name that takes jet suffixes ('', ^(k))
    int max_jet = 12;
};

// Jet variables y', y'', y^(k) are mapped to internal names y1, y2, yk.
// Returns the normalized expression. Throws ParseError.
Expr parse(const std::string& text, const ParameterTable& params, const ParseOptions& opts);
Expr parse(const std::string& text, const ParameterTable& params);

}  // namespace linsym
