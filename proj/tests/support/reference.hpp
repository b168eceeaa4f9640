#pragma once

// Self-contained reference implementations for the tests. Everything
// here is written straight from the governing equations and never calls
// into the library, so agreement between the two is meaningful.

#include <cmath>
#include <random>

namespace reference {

struct Model {
    double a = 0.0;
    double c0 = 0.0;
    double y0 = 0.0;
    double r = 0.0;
};

/// Quadratic spending rule: a*b^2 + c0 while solvent, the floor c0 in debt.
inline double spending(double b, const Model& m) {
    return b >= 0.0 ? m.a * b * b + m.c0 : m.c0;
}

/// Budget flow without the interest term.
inline double flow(double b, const Model& m) { return m.y0 - spending(b, m); }

/// Classic fourth-order Runge-Kutta from b0 over [0, t] in `steps`
/// fixed steps, for any scalar right-hand side f(b).
template <typename F>
double rk4(double b0, double t, F&& f, int steps) {
    double b = b0;
    const double h = t / steps;
    for (int i = 0; i < steps; ++i) {
        const double k1 = f(b);
        const double k2 = f(b + 0.5 * h * k1);
        const double k3 = f(b + 0.5 * h * k2);
        const double k4 = f(b + h * k3);
        b += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return b;
}

/// Budget at time t from the reference integrator.
inline double budget_at(double b0, double t, const Model& m, int steps = 100000) {
    if (t == 0.0) return b0;
    return rk4(b0, t, [&m](double b) { return flow(b, m); }, steps);
}

/// Bisection to floating-point stall on a sign change of f over [lo, hi].
template <typename F>
double find_root(double lo, double hi, F&& f, int iters = 200) {
    double f_lo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double f_mid = f(mid);
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// First time the budget reaches zero from b0 > 0, by bisection on the
/// reference integrator. t_hi must lie beyond the crossing.
inline double zero_time(double b0, const Model& m, double t_hi) {
    return find_root(0.0, t_hi, [&](double t) { return budget_at(b0, t, m, 20000); });
}

inline double uniform(std::mt19937& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

}  // namespace reference
