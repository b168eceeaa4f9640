#include "budgetsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "budgetsim/format.hpp"

namespace budgetsim {

namespace {

ModelParams substitute(const ModelParams& base, SweepParameter varying, double value) {
    ModelParams p = base;
    switch (varying) {
        case SweepParameter::A: p.a = value; break;
        case SweepParameter::C0: p.c0 = value; break;
        case SweepParameter::Y0: p.y0 = value; break;
        case SweepParameter::B0: break;  // b0 lives outside ModelParams
    }
    return p;
}

bool wants(const SweepSpec& spec, SweepOutput output) {
    return std::find(spec.outputs.begin(), spec.outputs.end(), output) != spec.outputs.end();
}

// t0 for the sqrt rule has no closed form; detect the crossing
// numerically. gamma < 0 guarantees one exists, but it may lie beyond
// the configured horizon.
std::optional<double> numeric_time_to_zero(double b0, const ModelParams& p,
                                           const ExpenditureRule& rule,
                                           const IntegratorConfig& cfg) {
    const Trajectory traj = integrate(b0, p, rule, cfg);
    for (const auto& event : traj.events) {
        if (event.direction == CrossingDirection::DownThroughZero) return event.t_cross;
    }
    return std::nullopt;
}

void fill_row(SweepRow& row, const SweepSpec& spec, const ModelParams& params, double b0) {
    const FixedPointReport report = fixed_points(params, spec.rule);
    if (!report.points.empty()) {
        row.b_star = report.points.front().b_star;
        row.stability = report.points.front().stability;
    }
    row.debt_continuum = report.debt_continuum;

    if (wants(spec, SweepOutput::TimeToZero) && row.gamma < 0.0 && b0 >= 0.0) {
        if (spec.rule.kind == ExpenditureKind::Quadratic) {
            row.t0 = time_to_zero(b0, params);
        } else {
            row.t0 = numeric_time_to_zero(b0, params, spec.rule, spec.integrator);
            if (!row.t0) row.error = "no zero crossing within t_end";
        }
    }

    if (wants(spec, SweepOutput::FinalB)) {
        const Trajectory traj = integrate(b0, params, spec.rule, spec.integrator);
        row.final_b = traj.samples.back().b;
    }

    if (wants(spec, SweepOutput::MaxError)) {
        row.max_error = validate(params, spec.rule, b0, spec.integrator).sup_norm_error;
    }
}

}  // namespace

std::vector<PortraitSample> phase_portrait(const ModelParams& p, const ExpenditureRule& rule,
                                           double b_min, double b_max, std::size_t n) {
    require_valid(p);
    require_valid(rule);
    if (!std::isfinite(b_min) || !std::isfinite(b_max) || !(b_min < b_max)) {
        throw std::invalid_argument("phase_portrait: requires b_min < b_max");
    }
    if (n < 2) throw std::invalid_argument("phase_portrait: requires n >= 2");

    std::vector<PortraitSample> samples;
    samples.reserve(n);
    const double step = (b_max - b_min) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double b = i + 1 == n ? b_max : b_min + static_cast<double>(i) * step;
        samples.push_back({b, drift(b, p, rule)});
    }
    return samples;
}

SweepResult sweep(const SweepSpec& spec) {
    if (spec.values.empty()) throw std::invalid_argument("sweep: values must be non-empty");
    for (double v : spec.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("sweep: values must be finite");
    }
    require_valid(spec.rule);
    require_valid(spec.integrator);
    if (!std::isfinite(spec.b0)) throw std::invalid_argument("sweep: b0 must be finite");

    SweepResult result;
    result.rows.reserve(spec.values.size());
    for (double value : spec.values) {
        SweepRow row;
        row.value = value;
        const ModelParams params = substitute(spec.base, spec.varying, value);
        row.gamma = params.gamma();
        const double b0 = spec.varying == SweepParameter::B0 ? value : spec.b0;
        try {
            if (auto why = invariant_violation(params)) {
                row.error = *why;
            } else {
                fill_row(row, spec, params, b0);
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

ValidationReport validate(const ModelParams& p, const ExpenditureRule& rule, double b0,
                          const IntegratorConfig& cfg, const ValidationTolerances& tol) {
    if (rule.kind != ExpenditureKind::Quadratic) {
        throw std::domain_error("validate: closed forms exist only for the quadratic rule");
    }
    require_valid(p);
    require_valid(cfg);
    if (!std::isfinite(b0)) throw std::invalid_argument("validate: b0 must be finite");

    const Trajectory traj = integrate(b0, p, rule, cfg);
    const CompositeSolution comp = compose(b0, p, cfg.t_end);

    double sup = 0.0;
    for (const auto& sample : traj.samples) {
        sup = std::max(sup, std::abs(sample.b - comp.eval(sample.t)));
    }

    double event_err = 0.0;
    if (comp.switch_times.empty() != traj.events.empty()) {
        event_err = std::numeric_limits<double>::infinity();
    } else if (!comp.switch_times.empty()) {
        event_err = std::abs(traj.events.front().t_cross - comp.switch_times.front());
    }

    ValidationReport report;
    {
        std::ostringstream id;
        id << to_string(rule.kind) << " a=" << format_double(p.a) << " c0=" << format_double(p.c0)
           << " y0=" << format_double(p.y0) << " r=" << format_double(p.r)
           << " b0=" << format_double(b0) << " " << to_string(cfg.method)
           << " dt=" << format_double(cfg.dt) << " t_end=" << format_double(cfg.t_end);
        report.scenario_id = id.str();
    }
    report.sup_norm_error = sup;
    report.event_time_error = event_err;
    report.passed = sup < tol.sup_norm && event_err < tol.event_time;
    return report;
}

std::string_view to_string(SweepParameter parameter) noexcept {
    switch (parameter) {
        case SweepParameter::A: return "a";
        case SweepParameter::C0: return "c0";
        case SweepParameter::Y0: return "y0";
        case SweepParameter::B0: return "b0";
    }
    return "?";
}

std::string_view to_string(SweepOutput output) noexcept {
    switch (output) {
        case SweepOutput::FixedPoint: return "fixed_point";
        case SweepOutput::TimeToZero: return "t0";
        case SweepOutput::FinalB: return "final_b";
        case SweepOutput::MaxError: return "max_error";
    }
    return "?";
}

}  // namespace budgetsim
