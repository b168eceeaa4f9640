#pragma once

// Core consumer-budget model: parameters, expenditure rules, drift,
// regime classification and fixed-point analysis for the autonomous
// system  db/dt = y0 - c(b) [+ r/(r+1) * b].

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace budgetsim {

/// Constants defining one consumer scenario. Units are abstract
/// "money" and "period"; no currency handling.
struct ModelParams {
    double a = 0.0;   ///< expenditure curvature, 1/(money*period)
    double c0 = 0.0;  ///< minimum expenditure rate, money/period
    double y0 = 0.0;  ///< constant income rate, money/period
    double r = 0.0;   ///< interest rate per period, dimensionless

    /// Net surplus rate y0 - c0; its sign selects the solvent regime.
    [[nodiscard]] double gamma() const noexcept { return y0 - c0; }
};

/// First violated invariant of `p`, or nullopt when valid.
/// Messages name the offending field and the violated bound.
[[nodiscard]] std::optional<std::string> invariant_violation(const ModelParams& p);

/// Throws std::invalid_argument when `p` violates an invariant.
void require_valid(const ModelParams& p);

enum class ExpenditureKind {
    Quadratic,  ///< c(b) = a*b^2 + c0 for b >= 0, c0 otherwise
    SqrtHydro,  ///< c(b) = k*sqrt(b) + c0 for b >= 0, c0 otherwise
};

/// Functional relation between expenditure rate and budget. Both kinds
/// are continuous at b = 0 (value c0) and non-decreasing in b.
struct ExpenditureRule {
    ExpenditureKind kind = ExpenditureKind::Quadratic;
    double k = 0.0;  ///< sqrt coefficient, sqrt(money)/period; SqrtHydro only

    [[nodiscard]] static ExpenditureRule quadratic() noexcept {
        return {ExpenditureKind::Quadratic, 0.0};
    }
    [[nodiscard]] static ExpenditureRule sqrt_hydro(double k) noexcept {
        return {ExpenditureKind::SqrtHydro, k};
    }
};

[[nodiscard]] std::optional<std::string> invariant_violation(const ExpenditureRule& rule);
void require_valid(const ExpenditureRule& rule);

/// Dynamical regime, a total function of (sign gamma, sign b).
/// b = 0 belongs to the solvent branches.
enum class Regime {
    SurplusSolvent,   ///< gamma > 0, b >= 0
    DeficitSolvent,   ///< gamma < 0, b >= 0
    BalancedSolvent,  ///< gamma = 0, b >= 0
    Debt,             ///< b < 0
};

enum class Stability {
    Stable,            ///< negative linearization
    HalfStable,        ///< zero linearization, attracting from one side
    MarginallyStable,  ///< zero drift everywhere on the branch
    None,              ///< placeholder used when no fixed point exists
};

struct FixedPoint {
    double b_star = 0.0;
    Stability stability = Stability::None;
};

/// Equilibria of the solvent branch plus a flag for the debt-branch
/// continuum: when gamma = 0 every b < 0 is a marginally stable fixed
/// point, which has no single representative value.
struct FixedPointReport {
    std::vector<FixedPoint> points;
    bool debt_continuum = false;
};

/// Expenditure rate c(b) per the rule's piecewise formula. Total on all
/// real b; result >= c0.
[[nodiscard]] double expenditure(double b, const ExpenditureRule& rule, const ModelParams& p);

/// Right-hand side of the budget ODE: y0 - c(b), plus r/(r+1)*b when
/// `include_interest` is set.
[[nodiscard]] double drift(double b, const ModelParams& p, const ExpenditureRule& rule,
                           bool include_interest = false);

/// Total, deterministic regime classification of (gamma(p), b).
[[nodiscard]] Regime classify_regime(double b, const ModelParams& p) noexcept;

/// Fixed points of the no-interest dynamics. Quadratic uses the closed
/// form sqrt(gamma/a) with the analytic linearization -2*a*b_star;
/// SqrtHydro roots are bracketed and bisected, with stability from a
/// central finite difference (step 1e-6). |linearization| < 1e-12
/// classifies HalfStable.
[[nodiscard]] FixedPointReport fixed_points(const ModelParams& p, const ExpenditureRule& rule);

[[nodiscard]] std::string_view to_string(ExpenditureKind kind) noexcept;
[[nodiscard]] std::string_view to_string(Regime regime) noexcept;
[[nodiscard]] std::string_view to_string(Stability stability) noexcept;

}  // namespace budgetsim
