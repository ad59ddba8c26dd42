#pragma once

#include "linsym/linearizer.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linsym::cli {

using Json = nlohmann::ordered_json;

struct InputError {
    std::string message;
    size_t line = 0;  // 1-based; 0 when not tied to a line
};

// Line-oriented problem description; see docs/problem-format.md.
struct ProblemFile {
    ParameterTable params;
    std::vector<std::string> labels;
    std::vector<VectorField> gens;
    OdeSpec ode{0, Expr::num(0)};
    std::optional<PointTransformation> candidate;
};

ProblemFile parse_problem(const std::string& text);  // throws InputError
ProblemFile load_problem(const std::string& path);   // throws InputError

struct RunOptions {
    unsigned long seed = 0;
    bool force = false;
    bool no_integrate = false;  // verification-only: use the candidate transformation
    std::map<std::string, Rational> param_overrides;
};

// Each report carries an "exit_code" field: 0 = all verdicts pass,
// 2 = NotCovered, 3 = verification failure.
Json run_check(const ProblemFile& pf, const RunOptions& opt);
Json run_classify(const ProblemFile& pf, const RunOptions& opt);
Json run_linearize(const ProblemFile& pf, const RunOptions& opt);

std::string render_text(const Json& report);  // human-readable summary

}  // namespace linsym::cli
