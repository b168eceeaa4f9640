#pragma once

// Closed-form solutions of db/dt = gamma - a*b^2 (b >= 0) and
// db/dt = gamma (b < 0), one per regime, plus a regime-switching
// composite that continues the dynamics across b = 0.

#include <vector>

#include "budgetsim/model.hpp"

namespace budgetsim {

/// Surplus branch (gamma > 0, b0 >= 0):
///   b(t) = b_s * (b0 + b_s*tanh(a*b_s*t)) / (b_s + b0*tanh(a*b_s*t))
/// Monotone in t, approaching b_s. Evaluated through bounded tanh; for
/// a*b_s*t > 50 the exact limit b_s is returned.
/// Throws std::domain_error when gamma <= 0 or b0 < 0.
[[nodiscard]] double solve_surplus(double t, double b0, const ModelParams& p);

/// Deficit branch (gamma < 0, b0 >= 0, 0 <= t <= t0):
///   b(t) = b_N * tan(arctan(b0/b_N) - b_N*a*t)
/// Strictly decreasing on [0, t0]. Throws std::domain_error when
/// gamma >= 0, b0 < 0, or t lies outside [0, t0].
[[nodiscard]] double solve_deficit(double t, double b0, const ModelParams& p);

/// Debt branch: b(t) = gamma*t + b0. Affine evaluation, total.
[[nodiscard]] double solve_debt(double t, double b0, const ModelParams& p) noexcept;

/// Balanced branch (gamma = 0, b0 >= 0): b(t) = b0 / (1 + a*b0*t),
/// monotone non-increasing toward 0. Throws std::domain_error when
/// gamma != 0, b0 < 0, or t < 0.
[[nodiscard]] double solve_balanced(double t, double b0, const ModelParams& p);

/// Time at which a deficit-regime budget reaches zero:
///   t0 = arctan(b0/b_N) / (b_N * a)
/// Throws std::domain_error when gamma >= 0 or b0 < 0.
[[nodiscard]] double time_to_zero(double b0, const ModelParams& p);

/// One closed-form solution pinned to the regime of its initial value.
/// Derived constants are populated only where the regime defines them
/// (NaN elsewhere). eval() takes time measured from the segment start.
struct AnalyticSolution {
    Regime regime = Regime::BalancedSolvent;
    ModelParams params;
    double b0 = 0.0;
    double b_s = 0.0;  ///< sqrt(gamma/a), surplus regime only
    double b_N = 0.0;  ///< sqrt(|gamma|/a), deficit regime only
    double t0 = 0.0;   ///< vanishing-budget time, deficit regime only

    [[nodiscard]] static AnalyticSolution make(double b0, const ModelParams& p);
    [[nodiscard]] double eval(double t) const;
};

struct CompositeSegment {
    double t_start = 0.0;
    double t_end = 0.0;
    AnalyticSolution solution;  // local time: eval(t - t_start)
};

/// Piecewise solution on [0, t_end] whose segments abut exactly and
/// agree at every switch time.
struct CompositeSolution {
    std::vector<CompositeSegment> segments;
    std::vector<double> switch_times;

    [[nodiscard]] double t_end() const noexcept { return segments.back().t_end; }
    /// Throws std::domain_error outside [0, t_end()].
    [[nodiscard]] double eval(double t) const;
};

/// Continues the stated dynamics across b = 0: deficit runs into the
/// debt branch with the same gamma, and debt with gamma > 0 switches to
/// the surplus branch when b reaches zero from below. Solvent regimes
/// with gamma >= 0 never switch.
[[nodiscard]] CompositeSolution compose(double b0, const ModelParams& p, double t_end);

}  // namespace budgetsim
