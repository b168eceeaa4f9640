// budgetsim: command line front end for the budget dynamics library.
// Every subcommand reads one JSON scenario config and writes CSV (and,
// for validate, a JSON report). Exit codes: 0 ok, 1 config error,
// 2 runtime error.

#include <array>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "budgetsim/runner.hpp"

namespace {

struct SubcommandArgs {
    std::string config_path;
    std::string out_override;
    std::vector<std::string> overrides;
};

void attach(CLI::App& app, std::string_view name, const std::string& blurb,
            SubcommandArgs& args) {
    CLI::App* sub = app.add_subcommand(std::string(name), blurb);
    sub->add_option("--config", args.config_path, "scenario config (JSON)")->required();
    sub->add_option("--out", args.out_override, "output path, overrides the config");
    sub->add_option("--set", args.overrides,
                    "override a config field, dotted.key=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
    using budgetsim::cli::RunKind;

    CLI::App app{"budget dynamics simulator"};
    app.require_subcommand(1);

    constexpr std::array<RunKind, 5> kinds = {RunKind::Simulate, RunKind::FixedPoints,
                                              RunKind::Sweep, RunKind::PhasePortrait,
                                              RunKind::Validate};
    const std::array<std::string, 5> blurbs = {
        "integrate one trajectory and write t,b,regime",
        "report equilibria and their stability",
        "vary one parameter over a list of values",
        "tabulate drift over a range of budgets",
        "cross-check the integrator against the closed form",
    };
    std::array<SubcommandArgs, 5> args{};
    for (std::size_t i = 0; i < kinds.size(); ++i)
        attach(app, to_string(kinds[i]), blurbs[i], args[i]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Clamp CLI11's per-error exit codes to the documented config-error code.
        return app.exit(e) == 0 ? 0 : 1;
    }

    for (std::size_t i = 0; i < kinds.size(); ++i) {
        if (!app.get_subcommand(std::string(to_string(kinds[i])))->parsed()) continue;
        budgetsim::cli::RunRequest request;
        request.kind = kinds[i];
        request.config_path = args[i].config_path;
        request.out_override = args[i].out_override;
        request.overrides = args[i].overrides;
        const budgetsim::cli::RunResult result = budgetsim::cli::run(request);
        if (!result.diagnostic.empty()) std::cerr << result.diagnostic << '\n';
        for (const std::string& path : result.outputs)
            std::cout << "wrote " << path << '\n';
        return result.exit_code;
    }
    return 0;
}
