#include "budgetsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace budgetsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTanhSaturation = 50.0;  // tanh(u) == 1 to double precision well before this

[[noreturn]] void domain_fail(const char* op, const char* why) {
    std::ostringstream os;
    os << op << ": " << why;
    throw std::domain_error(os.str());
}

// Debt-branch solution anchored at the switch point b = 0, which
// classify_regime assigns to the solvent side.
AnalyticSolution debt_from_zero(const ModelParams& p) {
    AnalyticSolution s;
    s.regime = Regime::Debt;
    s.params = p;
    s.b0 = 0.0;
    s.b_s = kNaN;
    s.b_N = kNaN;
    s.t0 = kNaN;
    return s;
}

}  // namespace

double solve_surplus(double t, double b0, const ModelParams& p) {
    const double gamma = p.gamma();
    if (gamma <= 0.0) domain_fail("solve_surplus", "requires gamma > 0");
    if (b0 < 0.0) domain_fail("solve_surplus", "requires b0 >= 0");
    if (t < 0.0) domain_fail("solve_surplus", "requires t >= 0");

    const double b_s = std::sqrt(gamma / p.a);
    if (t == 0.0) return b0;
    if (b0 == b_s) return b_s;
    const double u = p.a * b_s * t;
    if (u > kTanhSaturation) return b_s;
    const double th = std::tanh(u);
    return b_s * (b0 + b_s * th) / (b_s + b0 * th);
}

double solve_deficit(double t, double b0, const ModelParams& p) {
    const double gamma = p.gamma();
    if (gamma >= 0.0) domain_fail("solve_deficit", "requires gamma < 0");
    if (b0 < 0.0) domain_fail("solve_deficit", "requires b0 >= 0");
    if (t < 0.0) domain_fail("solve_deficit", "requires t >= 0");

    const double b_N = std::sqrt(-gamma / p.a);
    const double t0 = std::atan(b0 / b_N) / (b_N * p.a);
    if (t > t0) domain_fail("solve_deficit", "t exceeds the vanishing-budget time t0");

    if (t == 0.0) return b0;
    return b_N * std::tan(std::atan(b0 / b_N) - b_N * p.a * t);
}

double solve_debt(double t, double b0, const ModelParams& p) noexcept {
    return p.gamma() * t + b0;
}

double solve_balanced(double t, double b0, const ModelParams& p) {
    if (p.gamma() != 0.0) domain_fail("solve_balanced", "requires gamma = 0");
    if (b0 < 0.0) domain_fail("solve_balanced", "requires b0 >= 0");
    if (t < 0.0) domain_fail("solve_balanced", "requires t >= 0");
    return b0 / (1.0 + p.a * b0 * t);
}

double time_to_zero(double b0, const ModelParams& p) {
    const double gamma = p.gamma();
    if (gamma >= 0.0) domain_fail("time_to_zero", "requires gamma < 0");
    if (b0 < 0.0) domain_fail("time_to_zero", "requires b0 >= 0");
    const double b_N = std::sqrt(-gamma / p.a);
    return std::atan(b0 / b_N) / (b_N * p.a);
}

AnalyticSolution AnalyticSolution::make(double b0, const ModelParams& p) {
    AnalyticSolution s;
    s.regime = classify_regime(b0, p);
    s.params = p;
    s.b0 = b0;
    s.b_s = kNaN;
    s.b_N = kNaN;
    s.t0 = kNaN;
    switch (s.regime) {
        case Regime::SurplusSolvent:
            s.b_s = std::sqrt(p.gamma() / p.a);
            break;
        case Regime::DeficitSolvent:
            s.b_N = std::sqrt(-p.gamma() / p.a);
            s.t0 = time_to_zero(b0, p);
            break;
        default:
            break;
    }
    return s;
}

double AnalyticSolution::eval(double t) const {
    switch (regime) {
        case Regime::SurplusSolvent: return solve_surplus(t, b0, params);
        case Regime::DeficitSolvent: return solve_deficit(t, b0, params);
        case Regime::BalancedSolvent: return solve_balanced(t, b0, params);
        case Regime::Debt: return solve_debt(t, b0, params);
    }
    return kNaN;
}

double CompositeSolution::eval(double t) const {
    if (segments.empty()) throw std::domain_error("CompositeSolution: empty");
    if (t < 0.0 || t > t_end()) {
        throw std::domain_error("CompositeSolution: t outside [0, t_end]");
    }
    // first segment whose end covers t; switch times evaluate on the
    // earlier segment (both sides agree there)
    for (const auto& seg : segments) {
        if (t <= seg.t_end) return seg.solution.eval(t - seg.t_start);
    }
    return segments.back().solution.eval(t - segments.back().t_start);
}

CompositeSolution compose(double b0, const ModelParams& p, double t_end) {
    require_valid(p);
    if (!(t_end > 0.0)) throw std::invalid_argument("compose: t_end must be > 0");

    const double gamma = p.gamma();
    CompositeSolution out;

    auto full_segment = [&](double start, double b_at_start) {
        out.segments.push_back({start, t_end, AnalyticSolution::make(b_at_start, p)});
    };

    if (b0 >= 0.0) {
        if (gamma >= 0.0) {
            // surplus and balanced solutions stay on the solvent branch
            full_segment(0.0, b0);
            return out;
        }
        const double t0 = time_to_zero(b0, p);
        if (t0 == 0.0) {
            // starts exactly on the boundary and immediately enters debt
            out.segments.push_back({0.0, t_end, debt_from_zero(p)});
            return out;
        }
        if (t0 >= t_end) {
            full_segment(0.0, b0);
            return out;
        }
        out.segments.push_back({0.0, t0, AnalyticSolution::make(b0, p)});
        out.segments.push_back({t0, t_end, debt_from_zero(p)});
        out.switch_times.push_back(t0);
        return out;
    }

    // Debt start. The budget reaches zero only when gamma > 0.
    if (gamma <= 0.0) {
        full_segment(0.0, b0);
        return out;
    }
    const double t_up = -b0 / gamma;
    if (t_up >= t_end) {
        full_segment(0.0, b0);
        return out;
    }
    out.segments.push_back({0.0, t_up, AnalyticSolution::make(b0, p)});
    out.segments.push_back({t_up, t_end, AnalyticSolution::make(0.0, p)});
    out.switch_times.push_back(t_up);
    return out;
}

}  // namespace budgetsim
