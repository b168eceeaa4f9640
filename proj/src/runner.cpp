#include "budgetsim/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "budgetsim/analytic.hpp"
#include "budgetsim/csv.hpp"
#include "budgetsim/numeric.hpp"
#include "budgetsim/scenario.hpp"

namespace budgetsim::cli {
namespace {

namespace fs = std::filesystem;

/// Writes through a sibling temp file and renames it into place, so the
/// target path never holds a half-written file.
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open \"" + temp.string() + "\" for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(temp, ignored);
            throw std::runtime_error("failed writing \"" + temp.string() + "\"");
        }
    }
    std::error_code ec;
    fs::rename(temp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(temp, ignored);
        throw std::runtime_error("cannot move output into place at \"" + path.string() +
                                 "\": " + ec.message());
    }
}

std::string resolve_output(const ScenarioConfig& config, const RunRequest& request) {
    if (!request.out_override.empty()) return request.out_override;
    if (!config.output.empty()) return config.output;
    throw ConfigError("output", "missing (set \"output\" in the config or pass --out)");
}

std::string resolve_report(const ScenarioConfig& config, const std::string& output) {
    if (!config.report.empty()) return config.report;
    return fs::path(output).replace_extension(".report.json").string();
}

void emit(const std::string& path, const std::string& content, RunResult& result) {
    write_file_atomic(path, content);
    result.outputs.push_back(path);
}

void run_simulate(const ScenarioConfig& config, const std::string& output,
                  RunResult& result) {
    const Trajectory traj = integrate(config.b0, config.params, config.rule,
                                      config.integrator, config.include_interest);
    std::ostringstream os;
    csv::write_trajectory(os, traj, config.params);
    emit(output, os.str(), result);
}

void run_fixed_points(const ScenarioConfig& config, const std::string& output,
                      RunResult& result) {
    const FixedPointReport report = fixed_points(config.params, config.rule);
    std::ostringstream os;
    csv::write_fixed_points(os, report);
    emit(output, os.str(), result);
}

void run_sweep(const ScenarioConfig& config, const std::string& output,
               RunResult& result) {
    SweepSpec spec;
    spec.varying = config.sweep->varying;
    spec.values = config.sweep->values;
    spec.base = config.params;
    spec.b0 = config.b0;
    spec.rule = config.rule;
    spec.outputs = config.sweep->outputs;
    spec.integrator = config.integrator;
    const SweepResult rows = sweep(spec);
    std::ostringstream os;
    csv::write_sweep(os, spec, rows);
    emit(output, os.str(), result);
}

void run_phase_portrait(const ScenarioConfig& config, const std::string& output,
                        RunResult& result) {
    const auto samples = phase_portrait(config.params, config.rule,
                                        config.portrait->b_min, config.portrait->b_max,
                                        config.portrait->n);
    std::ostringstream os;
    csv::write_portrait(os, samples);
    emit(output, os.str(), result);
}

void run_validate(const ScenarioConfig& config, const std::string& output,
                  RunResult& result) {
    if (config.rule.kind != ExpenditureKind::Quadratic)
        throw ConfigError("rule.kind", "validate requires the quadratic rule");

    const ValidationReport report = validate(config.params, config.rule, config.b0,
                                             config.integrator, config.tolerances);
    const Trajectory traj =
        integrate(config.b0, config.params, config.rule, config.integrator);
    const CompositeSolution comp =
        compose(config.b0, config.params, config.integrator.t_end);

    std::ostringstream os;
    csv::write_validation_grid(os, traj, comp);
    emit(output, os.str(), result);

    nlohmann::json doc;
    doc["scenario_id"] = report.scenario_id;
    doc["sup_norm_error"] = report.sup_norm_error;
    doc["event_time_error"] = report.event_time_error;
    doc["passed"] = report.passed;
    doc["tolerances"]["sup_norm"] = config.tolerances.sup_norm;
    doc["tolerances"]["event_time"] = config.tolerances.event_time;
    emit(resolve_report(config, output), doc.dump(2) + "\n", result);
}

}  // namespace

RunResult run(const RunRequest& request) {
    RunResult result;
    try {
        const ScenarioConfig config =
            load_config(request.config_path, request.overrides, request.kind);
        const std::string output = resolve_output(config, request);
        switch (config.run) {
            case RunKind::Simulate: run_simulate(config, output, result); break;
            case RunKind::FixedPoints: run_fixed_points(config, output, result); break;
            case RunKind::Sweep: run_sweep(config, output, result); break;
            case RunKind::PhasePortrait: run_phase_portrait(config, output, result); break;
            case RunKind::Validate: run_validate(config, output, result); break;
        }
    } catch (const ConfigError& e) {
        result.exit_code = 1;
        result.diagnostic = std::string("config error: ") + e.what();
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.diagnostic = std::string("runtime error: ") + e.what();
    }
    return result;
}

}  // namespace budgetsim::cli
