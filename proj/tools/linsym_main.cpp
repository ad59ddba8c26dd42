#include "linsym/clifront.hpp"
#include "linsym/parser.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace linsym;
using namespace linsym::cli;

namespace {

struct CommonArgs {
    std::string file;
    std::string json_path;
    unsigned long seed = 0;
    bool force = false;
    bool no_integrate = false;
    std::vector<std::string> param_overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("file", args.file, "problem file")->required();
    cmd->add_option("--json", args.json_path, "write the JSON report here ('-' for stdout)");
    cmd->add_option("--seed", args.seed, "random seed for the probabilistic zero tests");
    cmd->add_option("--param", args.param_overrides, "override a parameter sample, name=rational");
    cmd->add_flag("--force", args.force, "proceed past failed symmetry checks");
    cmd->add_flag("--no-integrate", args.no_integrate,
                  "verification-only: check the candidate transformation from the file");
}

RunOptions options_from(const CommonArgs& args) {
    RunOptions opt;
    opt.seed = args.seed;
    opt.force = args.force;
    opt.no_integrate = args.no_integrate;
    for (const auto& s : args.param_overrides) {
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw InputError{"--param expects name=rational, got \"" + s + "\""};
        auto value = parse_rational(s.substr(eq + 1));
        if (!value) throw InputError{"--param value in \"" + s + "\" is not rational"};
        opt.param_overrides[s.substr(0, eq)] = *value;
    }
    return opt;
}

int run(const std::string& command, const CommonArgs& args) {
    ProblemFile pf = load_problem(args.file);
    RunOptions opt = options_from(args);
    Json report;
    if (command == "check")
        report = run_check(pf, opt);
    else if (command == "classify")
        report = run_classify(pf, opt);
    else
        report = run_linearize(pf, opt);
    if (args.json_path == "-") {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << render_text(report);
        if (!args.json_path.empty()) {
            std::ofstream out(args.json_path);
            if (!out) throw InputError{"cannot write \"" + args.json_path + "\""};
            out << report.dump(2) << "\n";
        }
    }
    return report["exit_code"].get<int>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetry-algebra classification and linearization of scalar ODEs"};
    app.require_subcommand(1);
    CommonArgs args;
    for (const char* name : {"check", "classify", "linearize"})
        add_common(app.add_subcommand(name), args);
    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands()[0]->get_name();
    try {
        return run(command, args);
    } catch (const InputError& e) {
        std::cerr << "error";
        if (e.line) std::cerr << " (line " << e.line << ")";
        std::cerr << ": " << e.message << "\n";
        return 4;
    } catch (const ParseError& e) {
        std::cerr << "parse error at offset " << e.position << ": " << e.message << "\n";
        return 4;
    }
}
