#include "linsym/clifront.hpp"

#include "linsym/parser.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace linsym::cli {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

Expr parse_at(const std::string& text, const ParameterTable& params, const ParseOptions& opts,
              size_t line) {
    try {
        return parse(text, params, opts);
    } catch (const ParseError& e) {
        throw InputError{e.message + " (at offset " + std::to_string(e.position) +
                             " of \"" + text + "\")",
                         line};
    }
}

// split "X = <expr>, Y = <expr>" on the comma that introduces the second name
std::pair<std::string, std::string> split_pair(const std::string& rest, const std::string& first,
                                               const std::string& second, size_t line) {
    size_t eq = rest.find('=');
    if (eq == std::string::npos || trim(rest.substr(0, eq)) != first)
        throw InputError{"expected \"" + first + " = ...\"", line};
    std::string tail = rest.substr(eq + 1);
    for (size_t pos = tail.find(','); pos != std::string::npos; pos = tail.find(',', pos + 1)) {
        std::string after = trim(tail.substr(pos + 1));
        if (after.rfind(second, 0) == 0) {
            std::string vtail = trim(after.substr(second.size()));
            if (!vtail.empty() && vtail[0] == '=')
                return {trim(tail.substr(0, pos)), trim(vtail.substr(1))};
        }
    }
    throw InputError{"expected \", " + second + " = ...\" after the first component", line};
}

std::string verdict_of(const ZeroTest& t) {
    switch (t.result) {
        case ZeroResult::Zero:
            return t.path == ZeroPath::Canonical ? "proved" : "probabilistically-verified";
        case ZeroResult::NonZero: return "failed";
        case ZeroResult::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

std::string path_of(const ZeroTest& t) {
    return t.path == ZeroPath::Canonical ? "canonical" : "probabilistic";
}

bool verdict_passes(const std::string& v) {
    return v == "proved" || v == "probabilistically-verified";
}

Json check_entry(const std::string& name, const ZeroTest& t) {
    return Json{{"name", name}, {"verdict", verdict_of(t)}, {"path", path_of(t)}};
}

Json exact_entry(const std::string& name, bool ok) {
    return Json{{"name", name}, {"verdict", ok ? "proved" : "failed"}, {"path", "canonical"}};
}

Json quad_json(const Quad& q) { return q.str(); }

Json eigen_json(const EigenData& e) {
    Json j;
    j["sum"] = quad_json(e.sum);
    j["product"] = quad_json(e.product);
    j["scalar_action"] = quad_json(e.raw_k);
    if (e.complex_pair) {
        j["eigenvalues"] = {e.re.str() + " + i*(" + e.im.str() + ")",
                            e.re.str() + " - i*(" + e.im.str() + ")"};
    } else {
        j["eigenvalues"] = {quad_json(e.lambda), quad_json(e.mu)};
    }
    return j;
}

Json transform_json(const PointTransformation& T) {
    Json j;
    j["X"] = to_string(T.P);
    j["Y"] = to_string(T.Q);
    if (T.inverse) j["inverse"] = {{"x", to_string(T.inverse->first)},
                                   {"y", to_string(T.inverse->second)}};
    return j;
}

ParameterTable effective_params(const ProblemFile& pf, const RunOptions& opt) {
    ParameterTable out;
    out.extension_disc = pf.params.extension_disc;
    for (const auto& p : pf.params.all()) {
        Param q = p;
        auto it = opt.param_overrides.find(p.name);
        if (it != opt.param_overrides.end()) q.sample = it->second;
        out.declare(q);
    }
    for (const auto& [name, value] : opt.param_overrides)
        if (!pf.params.declared(name))
            throw InputError{"override for undeclared parameter \"" + name + "\""};
    return out;
}

Json echo_json(const ProblemFile& pf, const ParameterTable& params) {
    Json j;
    j["parameters"] = Json::array();
    for (const auto& p : params.all()) {
        Json pj{{"name", p.name}};
        pj["sample"] = p.sample ? rational_to_string(*p.sample) : "";
        if (!p.note.empty()) pj["constraint"] = p.note;
        j["parameters"].push_back(pj);
    }
    if (params.extension_disc) j["extension"] = params.extension_disc;
    j["generators"] = Json::array();
    for (size_t i = 0; i < pf.gens.size(); ++i)
        j["generators"].push_back({{"label", pf.labels[i]},
                                   {"dx", to_string(pf.gens[i].xi)},
                                   {"dy", to_string(pf.gens[i].eta)}});
    j["ode"] = {{"order", pf.ode.order}, {"rhs", to_string(pf.ode.rhs)}};
    if (pf.candidate) j["candidate_transform"] = transform_json(*pf.candidate);
    return j;
}

// structure constants, dimensions, and (for the maximal shape) module weights
Json structure_json(const ProblemFile& pf, const ParameterTable& params, Rng& rng,
                    Json& checks, bool& closed) {
    Json j;
    closed = false;
    LieAlgebraStructure L;
    try {
        L = structure_constants(pf.gens, params, rng);
        closed = true;
        checks.push_back(exact_entry("closure under brackets", true));
    } catch (const LieError& e) {
        checks.push_back(Json{{"name", "closure under brackets"},
                              {"verdict", "failed"},
                              {"path", "canonical"},
                              {"detail", e.message}});
        return j;
    }
    Json table = Json::array();
    for (size_t i = 0; i < L.n; ++i)
        for (size_t k = i + 1; k < L.n; ++k) {
            if (qvec_is_zero(L.c[i][k])) continue;
            std::string rhs;
            for (size_t m = 0; m < L.n; ++m) {
                if (L.c[i][k][m].is_zero()) continue;
                if (!rhs.empty()) rhs += " + ";
                rhs += "(" + L.c[i][k][m].str() + ")*" + pf.labels[m];
            }
            table.push_back("[" + pf.labels[i] + ", " + pf.labels[k] + "] = " + rhs);
        }
    j["brackets"] = table;
    j["dimension"] = L.n;
    try {
        j["derived_dimension"] = derived_algebra(L).size();
        auto levi = levi_decomposition(L);
        j["radical_dimension"] = levi.radical.size();
        j["levi_dimension"] = levi.levi.size();
        if (levi.levi.size() == 3) {
            auto triple = sl2_standard_triple(L, levi.levi);
            auto dec = decompose_radical(L, triple, levi.radical);
            Json weights = Json::array();
            for (const auto& comp : dec.components) weights.push_back(comp.weight);
            j["module_weights"] = weights;
        }
    } catch (const LieError&) {
        // structural detail is best-effort; classification reports the failure
    }
    return j;
}

void symmetry_checks(const ProblemFile& pf, const ParameterTable& params, Rng& rng,
                     Json& checks) {
    for (size_t i = 0; i < pf.gens.size(); ++i)
        checks.push_back(
            check_entry("symmetry of " + pf.labels[i], is_symmetry_test(pf.gens[i], pf.ode, params, rng)));
}

int exit_from(const Json& report) {
    if (report.contains("case") &&
        report["case"]["kind"].get<std::string>() == "NotCovered")
        return 2;
    for (const auto& c : report["checks"])
        if (!verdict_passes(c["verdict"].get<std::string>())) return 3;
    if (report.contains("solved") && !report["solved"].get<bool>()) return 3;
    return 0;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

Json case_json(const CaseTag& tag) {
    Json j{{"kind", case_name(tag.kind)}, {"order", tag.order}};
    if (!tag.reason.empty()) j["reason"] = tag.reason;
    if (tag.eigen) j["eigen"] = eigen_json(*tag.eigen);
    return j;
}

// verification-only mode: the target is reconstructed from the classification
std::optional<OdeSpec> implied_target(const CaseTag& tag, int N) {
    if (tag.kind == CaseKind::MaximalSymmetry) return OdeSpec{N, Expr::num(0)};
    if (tag.eigen) {
        auto qe = [](const Quad& q) {
            Expr e = Expr::num(q.a);
            if (q.b != 0)
                e = e + Expr::num(q.b) * Expr::pow(Expr::num(q.d), Expr::num(Rational(1, 2)));
            return e;
        };
        return OdeSpec{3, normalize(qe(tag.eigen->sum) * Expr::sym("y2") -
                                    qe(tag.eigen->product) * Expr::sym("y1"))};
    }
    return std::nullopt;  // dim-4 target needs phi, which the integrator produces
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
    ProblemFile pf;
    std::optional<std::pair<Expr, Expr>> transform, inverse;
    bool saw_vars = false, saw_ode = false;
    size_t transform_line = 0;

    ParseOptions field_opts;
    field_opts.symbols = {"x", "y", "dx", "dy"};
    field_opts.max_jet = 0;
    ParseOptions plain_opts;
    plain_opts.max_jet = 0;
    ParseOptions jet_opts;

    std::istringstream in(text);
    std::string raw;
    size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        std::string rest = trim(line.substr(kw.size()));

        if (kw == "vars") {
            if (rest != "x y")
                throw InputError{"only the planar variables \"x y\" are supported", lineno};
            saw_vars = true;
        } else if (kw == "extension") {
            long long d = 0;
            try {
                d = std::stoll(rest);
            } catch (...) {
                throw InputError{"extension expects a positive integer", lineno};
            }
            if (d < 2) throw InputError{"extension expects an integer >= 2", lineno};
            Rational square;
            pf.params.extension_disc = squarefree_part(Int(d), square);
        } else if (kw == "params") {
            size_t eq = rest.find('=');
            if (eq == std::string::npos)
                throw InputError{"params expects \"name = rational [; constraint]\"", lineno};
            Param p;
            p.name = trim(rest.substr(0, eq));
            std::string value = trim(rest.substr(eq + 1));
            size_t semi = value.find(';');
            if (semi != std::string::npos) {
                p.note = trim(value.substr(semi + 1));
                value = trim(value.substr(0, semi));
            }
            if (p.name.empty() || pf.params.declared(p.name))
                throw InputError{"bad or duplicate parameter name", lineno};
            p.sample = parse_rational(value);
            if (!p.sample)
                throw InputError{"parameter sample \"" + value + "\" is not rational", lineno};
            pf.params.declare(p);
        } else if (kw == "field") {
            size_t eq = rest.find('=');
            if (eq == std::string::npos)
                throw InputError{"field expects \"label = <expr>*dx + <expr>*dy\"", lineno};
            std::string label = trim(rest.substr(0, eq));
            if (label.empty()) throw InputError{"field label is empty", lineno};
            for (const auto& l : pf.labels)
                if (l == label) throw InputError{"duplicate field label \"" + label + "\"", lineno};
            Expr e = parse_at(trim(rest.substr(eq + 1)), pf.params, field_opts, lineno);
            Expr xi = normalize(differentiate(e, "dx"));
            Expr eta = normalize(differentiate(e, "dy"));
            Expr residual = normalize(e - xi * Expr::sym("dx") - eta * Expr::sym("dy"));
            if (depends_on(xi, "dx") || depends_on(xi, "dy") || depends_on(eta, "dx") ||
                depends_on(eta, "dy") || !(residual == Expr::num(0)))
                throw InputError{"field is not linear in dx, dy", lineno};
            pf.labels.push_back(label);
            pf.gens.push_back({xi, eta});
        } else if (kw == "ode") {
            size_t colon = rest.find(':');
            if (colon == std::string::npos)
                throw InputError{"ode expects \"ode <order>: <equation>\"", lineno};
            int order = 0;
            try {
                order = std::stoi(trim(rest.substr(0, colon)));
            } catch (...) {
                throw InputError{"ode order is not an integer", lineno};
            }
            if (order < 1 || order > 12) throw InputError{"ode order out of range", lineno};
            std::string eqn = trim(rest.substr(colon + 1));
            size_t eq = eqn.find('=');
            Expr lhs, rhs = Expr::num(0);
            if (eq != std::string::npos) {
                lhs = parse_at(trim(eqn.substr(0, eq)), pf.params, jet_opts, lineno);
                rhs = parse_at(trim(eqn.substr(eq + 1)), pf.params, jet_opts, lineno);
            } else {
                lhs = parse_at(eqn, pf.params, jet_opts, lineno);
            }
            Expr L = normalize(lhs - rhs);
            std::string top = jet_name(order);
            Expr A = normalize(differentiate(L, top));
            if (A == Expr::num(0))
                throw InputError{"equation does not involve " + top, lineno};
            if (depends_on(A, top))
                throw InputError{"equation is not linear in " + top, lineno};
            Expr B = normalize(substitute(L, {{top, Expr::num(0)}}));
            Expr f = normalize(Expr::num(0) - B / A);
            for (int k = order; k <= 12; ++k)
                if (depends_on(f, jet_name(k)))
                    throw InputError{"solved right side still involves " + jet_name(k), lineno};
            pf.ode = {order, f};
            saw_ode = true;
        } else if (kw == "transform:" || (kw == "transform" && rest.rfind(":", 0) == 0)) {
            if (kw == "transform") rest = trim(rest.substr(1));
            auto [xs, ys] = split_pair(rest, "X", "Y", lineno);
            transform = {parse_at(xs, pf.params, plain_opts, lineno),
                         parse_at(ys, pf.params, plain_opts, lineno)};
            transform_line = lineno;
        } else if (kw == "inverse:" || (kw == "inverse" && rest.rfind(":", 0) == 0)) {
            if (kw == "inverse") rest = trim(rest.substr(1));
            auto [xs, ys] = split_pair(rest, "x", "y", lineno);
            inverse = {parse_at(xs, pf.params, plain_opts, lineno),
                       parse_at(ys, pf.params, plain_opts, lineno)};
        } else {
            throw InputError{"unknown keyword \"" + kw + "\"", lineno};
        }
    }
    if (!saw_vars) throw InputError{"missing \"vars x y\" line"};
    if (pf.gens.empty()) throw InputError{"no field lines"};
    if (!saw_ode) throw InputError{"missing ode line"};
    if (inverse && !transform) throw InputError{"inverse given without transform"};
    if (transform) pf.candidate = PointTransformation{transform->first, transform->second, inverse};
    (void)transform_line;
    return pf;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError{"cannot open \"" + path + "\""};
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

Json run_check(const ProblemFile& pf, const RunOptions& opt) {
    Timer timer;
    Rng rng(opt.seed);
    ParameterTable params = effective_params(pf, opt);
    Json report;
    report["command"] = "check";
    report["seed"] = opt.seed;
    report["input"] = echo_json(pf, params);
    Json checks = Json::array();
    bool closed = false;
    report["structure"] = structure_json(pf, params, rng, checks, closed);
    symmetry_checks(pf, params, rng, checks);
    report["checks"] = checks;
    report["timing_ms"] = timer.ms();
    report["exit_code"] = exit_from(report);
    return report;
}

Json run_classify(const ProblemFile& pf, const RunOptions& opt) {
    Timer timer;
    Rng rng(opt.seed);
    ParameterTable params = effective_params(pf, opt);
    Json report;
    report["command"] = "classify";
    report["seed"] = opt.seed;
    report["input"] = echo_json(pf, params);
    Json checks = Json::array();
    bool closed = false;
    report["structure"] = structure_json(pf, params, rng, checks, closed);
    if (closed) {
        CaseTag tag = classify(pf.gens, pf.ode.order, params, rng);
        report["case"] = case_json(tag);
    } else {
        report["case"] = Json{{"kind", "NotCovered"}, {"order", pf.ode.order},
                              {"reason", "generators do not close under brackets"}};
    }
    report["checks"] = checks;
    report["timing_ms"] = timer.ms();
    report["exit_code"] = exit_from(report);
    return report;
}

Json run_linearize(const ProblemFile& pf, const RunOptions& opt) {
    Timer timer;
    Rng rng(opt.seed);
    ParameterTable params = effective_params(pf, opt);
    Json report;
    report["command"] = "linearize";
    report["seed"] = opt.seed;
    report["input"] = echo_json(pf, params);
    Json checks = Json::array();
    bool closed = false;
    report["structure"] = structure_json(pf, params, rng, checks, closed);
    symmetry_checks(pf, params, rng, checks);

    if (!closed) {
        report["case"] = Json{{"kind", "NotCovered"}, {"order", pf.ode.order},
                              {"reason", "generators do not close under brackets"}};
        report["checks"] = checks;
        report["timing_ms"] = timer.ms();
        report["exit_code"] = exit_from(report);
        return report;
    }

    if (opt.no_integrate) {
        // verification-only: pull the candidate back against the implied target
        if (!pf.candidate)
            throw InputError{"verification-only mode needs a transform line"};
        CaseTag tag = classify(pf.gens, pf.ode.order, params, rng);
        report["case"] = case_json(tag);
        report["transformation"] = transform_json(*pf.candidate);
        auto target = implied_target(tag, pf.ode.order);
        if (target) {
            report["target"] = {{"order", target->order}, {"rhs", to_string(target->rhs)}};
            checks.push_back(check_entry(
                "pullback of candidate", pullback_check_test(pf.ode, *pf.candidate, *target, params, rng)));
        } else {
            checks.push_back(Json{{"name", "pullback of candidate"},
                                  {"verdict", "indeterminate"},
                                  {"path", "canonical"},
                                  {"detail", "no implied target for this case without integration"}});
        }
        report["checks"] = checks;
        report["timing_ms"] = timer.ms();
        report["exit_code"] = exit_from(report);
        return report;
    }

    LinearizationResult res = linearize(pf.gens, pf.ode.order, pf.ode, params, rng, opt.force);
    report["case"] = case_json(res.tag);
    report["solved"] = res.solved;
    if (!res.note.empty()) report["note"] = res.note;
    if (res.tag.kind != CaseKind::NotCovered && res.solved) {
        report["transformation"] = transform_json(res.transformation);
        report["target"] = {{"order", res.target.order}, {"rhs", to_string(res.target.rhs)}};
        if (res.trace) {
            report["trace"] = {{"alpha", to_string(res.trace->alpha)},
                               {"beta", to_string(res.trace->beta)},
                               {"gamma", to_string(res.trace->gamma)},
                               {"obstruction_k", to_string(res.trace->k)},
                               {"d", res.trace->d}};
        }
        if (res.tag.kind == CaseKind::Solvable4) report["phi"] = to_string(res.phi);
        checks.push_back(check_entry(
            "pullback of target", pullback_check_test(pf.ode, res.transformation, res.target, params, rng)));
        checks.push_back(exact_entry("generators in canonical span", res.span_ok));
    }
    report["checks"] = checks;
    report["timing_ms"] = timer.ms();
    report["exit_code"] = exit_from(report);
    return report;
}

std::string render_text(const Json& report) {
    std::ostringstream out;
    out << report["command"].get<std::string>() << " report (seed "
        << report["seed"].get<unsigned long>() << ")\n";
    if (report.contains("case")) {
        out << "  case: " << report["case"]["kind"].get<std::string>();
        if (report["case"].contains("reason"))
            out << " (" << report["case"]["reason"].get<std::string>() << ")";
        out << "\n";
        if (report["case"].contains("eigen")) {
            out << "  eigenvalues:";
            for (const auto& ev : report["case"]["eigen"]["eigenvalues"])
                out << " " << ev.get<std::string>();
            out << "\n";
        }
    }
    if (report.contains("transformation")) {
        out << "  X = " << report["transformation"]["X"].get<std::string>() << "\n";
        out << "  Y = " << report["transformation"]["Y"].get<std::string>() << "\n";
    }
    if (report.contains("target"))
        out << "  target: y^(" << report["target"]["order"].get<int>()
            << ") = " << report["target"]["rhs"].get<std::string>() << "\n";
    for (const auto& c : report["checks"])
        out << "  [" << c["verdict"].get<std::string>() << "] "
            << c["name"].get<std::string>() << "\n";
    out << "  exit " << report["exit_code"].get<int>() << " ("
        << report["timing_ms"].get<long>() << " ms)\n";
    return out.str();
}

}  // namespace linsym::cli
