#pragma once

// Scenario configuration: one JSON file per run, strictly checked
// (unknown keys are rejected by name), plus repeatable key=value
// overrides addressing fields by dotted path.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "budgetsim/model.hpp"
#include "budgetsim/numeric.hpp"
#include "budgetsim/scenario.hpp"

namespace budgetsim::cli {

enum class RunKind { Simulate, FixedPoints, Sweep, PhasePortrait, Validate };

[[nodiscard]] std::string_view to_string(RunKind kind) noexcept;

/// Configuration error carrying the dotted path of the offending field
/// ("params.a", "sweep.values", ...); empty when the file as a whole is
/// at fault. what() always contains the path.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& message);
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

struct SweepConfig {
    SweepParameter varying = SweepParameter::Y0;
    std::vector<double> values;
    std::vector<SweepOutput> outputs;
};

struct PortraitConfig {
    double b_min = 0.0;
    double b_max = 1.0;
    std::size_t n = 2;
};

struct ScenarioConfig {
    RunKind run = RunKind::Simulate;
    ModelParams params;
    ExpenditureRule rule;
    double b0 = 0.0;
    bool include_interest = false;
    IntegratorConfig integrator;
    std::optional<SweepConfig> sweep;
    std::optional<PortraitConfig> portrait;
    ValidationTolerances tolerances;
    std::string output;  ///< may be empty when supplied via --out
    std::string report;  ///< validate only; empty selects <output stem>.report.json
};

/// Parses `path`, applies `overrides` (each "dotted.key=value"; values
/// are parsed as JSON scalars/arrays, falling back to strings), checks
/// every invariant, and pins the run kind. `expected_kind`, when given,
/// must match any "run" key in the file.
/// Throws ConfigError on every failure, naming the offending field.
[[nodiscard]] ScenarioConfig load_config(const std::string& path,
                                         const std::vector<std::string>& overrides,
                                         std::optional<RunKind> expected_kind);

}  // namespace budgetsim::cli
