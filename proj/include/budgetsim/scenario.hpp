#pragma once

// Batch experiment layer: phase portraits, parameter sweeps, and
// analytic-vs-numeric validation reports. Emits data only; rendering is
// out of scope.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "budgetsim/analytic.hpp"
#include "budgetsim/model.hpp"
#include "budgetsim/numeric.hpp"

namespace budgetsim {

struct PortraitSample {
    double b = 0.0;
    double dbdt = 0.0;
};

/// n uniformly spaced samples of the no-interest drift on [b_min, b_max].
/// Throws std::invalid_argument unless b_min < b_max and n >= 2.
[[nodiscard]] std::vector<PortraitSample> phase_portrait(const ModelParams& p,
                                                         const ExpenditureRule& rule, double b_min,
                                                         double b_max, std::size_t n);

enum class SweepParameter { A, C0, Y0, B0 };

enum class SweepOutput { FixedPoint, TimeToZero, FinalB, MaxError };

/// One batch run varying a single parameter over an explicit list of
/// values. Fixed-point columns are always produced; `outputs` selects
/// the extra columns. `integrator` drives final_b, max_error and the
/// numeric time-to-zero fallback for the sqrt rule.
struct SweepSpec {
    SweepParameter varying = SweepParameter::Y0;
    std::vector<double> values;
    ModelParams base;
    double b0 = 0.0;
    ExpenditureRule rule;
    std::vector<SweepOutput> outputs;
    IntegratorConfig integrator;
};

/// One row per swept value. Optional cells stay empty where the
/// quantity is undefined (no fixed point, t0 with gamma >= 0, ...);
/// `error` records per-row failures without aborting the batch.
struct SweepRow {
    double value = 0.0;
    double gamma = 0.0;
    std::optional<double> b_star;
    Stability stability = Stability::None;
    bool debt_continuum = false;
    std::optional<double> t0;
    std::optional<double> final_b;
    std::optional<double> max_error;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// Runs every row (rows are independent; failures never abort the
/// batch) and collects results in input order.
/// Throws std::invalid_argument when the sweep request itself is
/// invalid (empty or non-finite value list).
[[nodiscard]] SweepResult sweep(const SweepSpec& spec);

struct ValidationTolerances {
    double sup_norm = 1e-6;    ///< money
    double event_time = 1e-6;  ///< periods
};

/// Cross-check of one numeric run against the composite closed form.
struct ValidationReport {
    std::string scenario_id;
    double sup_norm_error = 0.0;
    double event_time_error = 0.0;
    bool passed = false;
};

/// Integrates numerically, evaluates the composite analytic solution on
/// the same grid, and reports sup-norm and event-time discrepancies.
/// Quadratic rule only (the closed forms exist for no other rule);
/// throws std::domain_error otherwise.
[[nodiscard]] ValidationReport validate(const ModelParams& p, const ExpenditureRule& rule,
                                        double b0, const IntegratorConfig& cfg,
                                        const ValidationTolerances& tol = {});

[[nodiscard]] std::string_view to_string(SweepParameter parameter) noexcept;
[[nodiscard]] std::string_view to_string(SweepOutput output) noexcept;

}  // namespace budgetsim
