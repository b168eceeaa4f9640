#include "budgetsim/numeric.hpp"

#include <cmath>
#include <sstream>

namespace budgetsim {

namespace {

std::string non_finite_message(double t, double b) {
    std::ostringstream os;
    os << "integration state became non-finite; last good state t=" << t << " b=" << b;
    return os.str();
}

// Refine the zero of the linear interpolant through (t_lo, b_lo) and
// (t_hi, b_hi) by bisection. The interval shrinks below `width` and the
// interpolated value below 1e-10 before stopping (or the bracket stalls
// at ulp scale, whichever comes first).
double bisect_crossing(double t_lo, double b_lo, double t_hi, double b_hi, double width) {
    const double slope = (b_hi - b_lo) / (t_hi - t_lo);
    auto lerp = [&](double t) { return b_lo + slope * (t - t_lo); };

    double lo = t_lo;
    double hi = t_hi;
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double bm = lerp(mid);
        if (hi - lo <= width && std::abs(bm) <= 1e-10) break;
        if ((b_lo <= 0.0) == (bm <= 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

}  // namespace

std::optional<std::string> invariant_violation(const IntegratorConfig& cfg) {
    if (!std::isfinite(cfg.dt) || cfg.dt <= 0.0) return std::string("dt must be > 0");
    if (!std::isfinite(cfg.t_end) || cfg.t_end <= 0.0) return std::string("t_end must be > 0");
    if (!std::isfinite(cfg.event_tolerance) || cfg.event_tolerance <= 0.0 ||
        cfg.event_tolerance > cfg.dt) {
        return std::string("event_tolerance must be > 0 and <= dt");
    }
    return std::nullopt;
}

void require_valid(const IntegratorConfig& cfg) {
    if (auto why = invariant_violation(cfg)) throw std::invalid_argument(*why);
}

NonFiniteStateError::NonFiniteStateError(double last_good_t, double last_good_b)
    : std::runtime_error(non_finite_message(last_good_t, last_good_b)),
      t_(last_good_t),
      b_(last_good_b) {}

double step_discrete(double b, const ModelParams& p, const ExpenditureRule& rule) {
    return b + drift(b, p, rule, /*include_interest=*/true);
}

Trajectory iterate_discrete(double b0, std::size_t n, const ModelParams& p,
                            const ExpenditureRule& rule) {
    Trajectory traj;
    traj.source = TrajectorySource::Discrete;
    traj.samples.reserve(n + 1);
    double b = b0;
    traj.samples.push_back({0.0, b});
    for (std::size_t k = 1; k <= n; ++k) {
        b = step_discrete(b, p, rule);
        traj.samples.push_back({static_cast<double>(k), b});
    }
    return traj;
}

Trajectory integrate(double b0, const ModelParams& p, const ExpenditureRule& rule,
                     const IntegratorConfig& cfg, bool include_interest) {
    require_valid(cfg);
    if (!std::isfinite(b0)) throw std::invalid_argument("b0 must be finite");

    auto f = [&](double b) { return drift(b, p, rule, include_interest); };

    Trajectory traj;
    traj.source = TrajectorySource::Integrated;
    traj.config = cfg;
    traj.samples.reserve(static_cast<std::size_t>(cfg.t_end / cfg.dt) + 2);

    double b = b0;
    traj.samples.push_back({0.0, b});

    // Sample times come from k*dt (clamped to t_end) rather than a
    // running sum, keeping the grid free of accumulated rounding.
    for (std::size_t k = 0;; ++k) {
        const double t = std::min(static_cast<double>(k) * cfg.dt, cfg.t_end);
        if (t >= cfg.t_end) break;
        const double t_next = std::min(static_cast<double>(k + 1) * cfg.dt, cfg.t_end);
        const double h = t_next - t;

        double b_next;
        if (cfg.method == Method::Euler) {
            b_next = b + h * f(b);
        } else {
            const double k1 = f(b);
            const double k2 = f(b + 0.5 * h * k1);
            const double k3 = f(b + 0.5 * h * k2);
            const double k4 = f(b + h * k3);
            b_next = b + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if (!std::isfinite(b_next)) throw NonFiniteStateError(t, b);

        if ((b > 0.0 && b_next < 0.0) || (b < 0.0 && b_next > 0.0)) {
            const double t_cross = bisect_crossing(t, b, t_next, b_next, cfg.event_tolerance);
            traj.events.push_back({t_cross, b > 0.0 ? CrossingDirection::DownThroughZero
                                                    : CrossingDirection::UpThroughZero});
        } else if (b_next == 0.0 && b != 0.0) {
            // landed exactly on the boundary
            traj.events.push_back({t_next, b > 0.0 ? CrossingDirection::DownThroughZero
                                                   : CrossingDirection::UpThroughZero});
        }

        traj.samples.push_back({t_next, b_next});
        b = b_next;
    }
    return traj;
}

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::Euler: return "euler";
        case Method::RK4: return "rk4";
    }
    return "?";
}

std::string_view to_string(CrossingDirection direction) noexcept {
    switch (direction) {
        case CrossingDirection::DownThroughZero: return "DownThroughZero";
        case CrossingDirection::UpThroughZero: return "UpThroughZero";
    }
    return "?";
}

}  // namespace budgetsim
