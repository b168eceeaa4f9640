#include "budgetsim/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace budgetsim {

namespace {

constexpr double kTieThreshold = 1e-12;   // |linearization| below this is a tie
constexpr double kFdStep = 1e-6;          // central finite-difference step

std::string describe(const char* field, double got, const char* bound) {
    std::ostringstream os;
    os << field << " must be " << bound << " (got " << got << ")";
    return os.str();
}

Stability classify_linearization(double derivative) {
    if (std::abs(derivative) < kTieThreshold) return Stability::HalfStable;
    return derivative < 0.0 ? Stability::Stable : Stability::None;
}

// Root of the no-interest drift on [0, inf) for the SqrtHydro rule,
// found by bracket expansion + bisection. drift is strictly decreasing
// in b for k > 0, so the root is unique when it exists.
std::optional<double> sqrt_hydro_root(const ModelParams& p, const ExpenditureRule& rule) {
    const double gamma = p.gamma();
    if (rule.k <= 0.0) {
        // constant drift: a root exists only in the degenerate gamma = 0 case
        return gamma == 0.0 ? std::optional<double>(0.0) : std::nullopt;
    }
    if (gamma < 0.0) return std::nullopt;  // drift < 0 everywhere on b >= 0
    if (gamma == 0.0) return 0.0;

    auto f = [&](double b) { return gamma - rule.k * std::sqrt(b); };

    double hi = (gamma / rule.k) * (gamma / rule.k);  // exact root in real arithmetic
    hi = std::max(hi * 2.0, 1.0);
    while (f(hi) > 0.0) hi *= 2.0;
    double lo = 0.0;

    // Bisect to floating-point stall; the final bracket width is at ulp
    // scale, so |drift(root)| ~ eps * gamma.
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::optional<std::string> invariant_violation(const ModelParams& p) {
    if (!std::isfinite(p.a) || p.a <= 0.0) return describe("a", p.a, "> 0");
    if (!std::isfinite(p.c0) || p.c0 < 0.0) return describe("c0", p.c0, ">= 0");
    if (!std::isfinite(p.y0) || p.y0 < 0.0) return describe("y0", p.y0, ">= 0");
    if (!std::isfinite(p.r) || p.r < 0.0) return describe("r", p.r, ">= 0");
    return std::nullopt;
}

void require_valid(const ModelParams& p) {
    if (auto why = invariant_violation(p)) throw std::invalid_argument(*why);
}

std::optional<std::string> invariant_violation(const ExpenditureRule& rule) {
    if (rule.kind == ExpenditureKind::SqrtHydro && (!std::isfinite(rule.k) || rule.k < 0.0)) {
        return describe("k", rule.k, ">= 0");
    }
    return std::nullopt;
}

void require_valid(const ExpenditureRule& rule) {
    if (auto why = invariant_violation(rule)) throw std::invalid_argument(*why);
}

double expenditure(double b, const ExpenditureRule& rule, const ModelParams& p) {
    if (b < 0.0) return p.c0;
    switch (rule.kind) {
        case ExpenditureKind::Quadratic:
            return p.a * b * b + p.c0;
        case ExpenditureKind::SqrtHydro:
            return rule.k * std::sqrt(b) + p.c0;
    }
    return p.c0;
}

double drift(double b, const ModelParams& p, const ExpenditureRule& rule, bool include_interest) {
    double value = p.y0 - expenditure(b, rule, p);
    if (include_interest) value += p.r / (p.r + 1.0) * b;
    return value;
}

Regime classify_regime(double b, const ModelParams& p) noexcept {
    if (b < 0.0) return Regime::Debt;
    const double gamma = p.gamma();
    if (gamma > 0.0) return Regime::SurplusSolvent;
    if (gamma < 0.0) return Regime::DeficitSolvent;
    return Regime::BalancedSolvent;
}

FixedPointReport fixed_points(const ModelParams& p, const ExpenditureRule& rule) {
    const double gamma = p.gamma();
    FixedPointReport report;
    report.debt_continuum = gamma == 0.0;

    if (rule.kind == ExpenditureKind::Quadratic) {
        if (gamma > 0.0) {
            const double b_star = std::sqrt(gamma / p.a);
            report.points.push_back({b_star, classify_linearization(-2.0 * p.a * b_star)});
        } else if (gamma == 0.0) {
            report.points.push_back({0.0, classify_linearization(0.0)});
        }
        // gamma < 0: no solvent fixed point at all
        return report;
    }

    if (auto root = sqrt_hydro_root(p, rule)) {
        const double h = kFdStep;
        const double derivative =
            (drift(*root + h, p, rule) - drift(*root - h, p, rule)) / (2.0 * h);
        report.points.push_back({*root, classify_linearization(derivative)});
    }
    return report;
}

std::string_view to_string(ExpenditureKind kind) noexcept {
    switch (kind) {
        case ExpenditureKind::Quadratic: return "quadratic";
        case ExpenditureKind::SqrtHydro: return "sqrt_hydro";
    }
    return "?";
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::SurplusSolvent: return "SurplusSolvent";
        case Regime::DeficitSolvent: return "DeficitSolvent";
        case Regime::BalancedSolvent: return "BalancedSolvent";
        case Regime::Debt: return "Debt";
    }
    return "?";
}

std::string_view to_string(Stability stability) noexcept {
    switch (stability) {
        case Stability::Stable: return "Stable";
        case Stability::HalfStable: return "HalfStable";
        case Stability::MarginallyStable: return "MarginallyStable";
        case Stability::None: return "None";
    }
    return "?";
}

}  // namespace budgetsim
