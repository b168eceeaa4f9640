#pragma once

// Independent numerical machinery: the one-period savings recurrence,
// fixed-step Euler/RK4 integration of the budget ODE, and zero-crossing
// event detection. Serves as the oracle against the closed forms.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "budgetsim/model.hpp"

namespace budgetsim {

enum class Method { Euler, RK4 };

struct IntegratorConfig {
    Method method = Method::RK4;
    double dt = 1e-3;               ///< step size, periods
    double t_end = 1.0;             ///< integration horizon, periods
    double event_tolerance = 1e-9;  ///< bisection width for crossings; must be <= dt
};

[[nodiscard]] std::optional<std::string> invariant_violation(const IntegratorConfig& cfg);
void require_valid(const IntegratorConfig& cfg);

enum class CrossingDirection { DownThroughZero, UpThroughZero };

struct CrossingEvent {
    double t_cross = 0.0;
    CrossingDirection direction = CrossingDirection::DownThroughZero;
};

enum class TrajectorySource { Discrete, Integrated, Analytic };

struct TimeSample {
    double t = 0.0;
    double b = 0.0;
};

/// Sampled time series of the budget. Samples are strictly increasing
/// in t and start at (0, b0). A Trajectory is built by one execution
/// context and immutable afterwards.
struct Trajectory {
    std::vector<TimeSample> samples;
    TrajectorySource source = TrajectorySource::Integrated;
    std::optional<IntegratorConfig> config;  ///< set for Integrated trajectories
    std::vector<CrossingEvent> events;
};

/// Raised when the integration state stops being finite. Carries the
/// last good state so callers can report how far the run got.
class NonFiniteStateError : public std::runtime_error {
  public:
    NonFiniteStateError(double last_good_t, double last_good_b);
    [[nodiscard]] double last_good_t() const noexcept { return t_; }
    [[nodiscard]] double last_good_b() const noexcept { return b_; }

  private:
    double t_;
    double b_;
};

/// One period of the savings recurrence:
///   b' = b + y0 - c(b) + r/(r+1)*b
[[nodiscard]] double step_discrete(double b, const ModelParams& p, const ExpenditureRule& rule);

/// n applications of step_discrete, sampled at integer periods.
[[nodiscard]] Trajectory iterate_discrete(double b0, std::size_t n, const ModelParams& p,
                                          const ExpenditureRule& rule);

/// Fixed-step integration of drift(b). Steps whose endpoints bracket
/// b = 0 are refined by bisection on the linear interpolant and logged
/// as events; integration continues across the crossing (the piecewise
/// drift is continuous there). Euler with dt = 1 reproduces the
/// discrete recurrence exactly when r = 0.
/// Throws std::invalid_argument on a bad config and NonFiniteStateError
/// if the state leaves the finite range.
[[nodiscard]] Trajectory integrate(double b0, const ModelParams& p, const ExpenditureRule& rule,
                                   const IntegratorConfig& cfg, bool include_interest = false);

[[nodiscard]] std::string_view to_string(Method method) noexcept;
[[nodiscard]] std::string_view to_string(CrossingDirection direction) noexcept;

}  // namespace budgetsim
