// Acceptance gate for the budget dynamics simulator. Each numbered
// check prints one [PASS]/[FAIL] line and the process exits nonzero if
// any check fails. Tolerances are pinned inline next to each check.

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "budgetsim/analytic.hpp"
#include "budgetsim/csv.hpp"
#include "budgetsim/model.hpp"
#include "budgetsim/numeric.hpp"
#include "support/cli_harness.hpp"

using namespace budgetsim;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << label;
    if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << '\n';
    if (!ok) ++failures;
}

double uniform(std::mt19937& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

ModelParams deficit_params(double a, double gamma_neg) {
    return ModelParams{a, 1.0 - gamma_neg, 1.0, 0.0};
}

double sup_norm_vs_analytic(const Trajectory& traj, const AnalyticSolution& sol) {
    double sup = 0.0;
    for (const auto& s : traj.samples) sup = std::max(sup, std::abs(s.b - sol.eval(s.t)));
    return sup;
}

// 1. The three curves launched from above, at, and below the resting
//    budget behave as drawn: monotone decrease / flat line / monotone
//    increase, all settling at 10, with RK4 tracking the formulas.
void criterion_1() {
    constexpr double kSettleTol = 1e-4;
    constexpr double kSupTol = 1e-6;
    const ModelParams p{0.125, 1.0, 13.5, 0.0};
    std::string detail;
    bool ok = true;

    for (const double b0 : {15.0, 10.0, 5.0}) {
        const auto sol = AnalyticSolution::make(b0, p);

        bool decreasing = true, increasing = true, constant = true;
        double prev = sol.eval(0.0);
        for (int i = 1; i <= 1000; ++i) {
            const double b = sol.eval(10.0 * i / 1000.0);
            decreasing = decreasing && b < prev;
            increasing = increasing && b > prev;
            constant = constant && b == prev;
            prev = b;
        }
        const bool shape =
            b0 > 10.0 ? decreasing : (b0 < 10.0 ? increasing : constant);
        if (!shape) {
            ok = false;
            detail = "wrong monotonicity from b0=" + std::to_string(b0);
        }
        if (std::abs(sol.eval(10.0) - 10.0) >= kSettleTol) {
            ok = false;
            detail = "b(10) misses 10 from b0=" + std::to_string(b0);
        }

        IntegratorConfig cfg;
        cfg.method = Method::RK4;
        cfg.dt = 1e-3;
        cfg.t_end = 10.0;
        const auto traj = integrate(b0, p, ExpenditureRule::quadratic(), cfg);
        const double sup = sup_norm_vs_analytic(traj, sol);
        if (sup >= kSupTol) {
            ok = false;
            detail = "RK4 sup-norm " + std::to_string(sup);
        }
    }
    report(1, "reference trio: monotone shapes, settle at 10, RK4 sup-norm < 1e-6",
           ok, detail);
}

// 2. Equilibria sit at sqrt(gamma/a) with negative linearization when
//    gamma > 0, and there is no equilibrium when gamma < 0.
void criterion_2() {
    constexpr double kTol = 1e-12;
    std::mt19937 gen(4101);
    std::string detail;
    bool ok = true;

    for (int i = 0; i < 50; ++i) {
        const double a = uniform(gen, 0.01, 4.0);
        const ModelParams p{a, 1.0, 1.0 + uniform(gen, 0.05, 50.0), 0.0};
        const auto rep = fixed_points(p, ExpenditureRule::quadratic());
        if (rep.points.size() != 1) {
            ok = false;
            detail = "expected one equilibrium";
            break;
        }
        const double b_star = rep.points[0].b_star;
        if (std::abs(b_star - std::sqrt(p.gamma() / a)) >= kTol ||
            std::abs(drift(b_star, p, ExpenditureRule::quadratic())) >= kTol ||
            !(-2.0 * a * b_star < 0.0) ||
            rep.points[0].stability != Stability::Stable) {
            ok = false;
            detail = "equilibrium properties violated at a=" + std::to_string(a);
            break;
        }
    }
    for (int i = 0; i < 50 && ok; ++i) {
        const double a = uniform(gen, 0.01, 4.0);
        const auto rep =
            fixed_points(deficit_params(a, -uniform(gen, 0.05, 50.0)),
                         ExpenditureRule::quadratic());
        if (!rep.points.empty()) {
            ok = false;
            detail = "spurious equilibrium with gamma < 0";
        }
    }
    report(2, "equilibria: b* = sqrt(gamma/a), stable, absent for gamma < 0", ok,
           detail);
}

// 3. Detected zero crossings agree with the arctan vanishing time.
void criterion_3() {
    constexpr double kTol = 1e-6;
    std::mt19937 gen(4102);
    std::string detail;
    bool ok = true;

    struct Scenario {
        ModelParams p;
        double b0;
    };
    std::vector<Scenario> cases;
    cases.push_back({ModelParams{0.125, 13.5, 1.0, 0.0}, 10.0});
    for (int i = 0; i < 20; ++i) {
        const double a = uniform(gen, 0.05, 1.0);
        cases.push_back(
            {deficit_params(a, -uniform(gen, 0.5, 10.0)), uniform(gen, 0.5, 15.0)});
    }

    // Anchor identity: b_N = 10 and b0 = 10 give t0 = 0.8 * pi/4.
    {
        const double b_N = std::sqrt(-cases[0].p.gamma() / cases[0].p.a);
        const double t0 =
            std::atan(cases[0].b0 / b_N) / (b_N * cases[0].p.a);
        if (std::abs(t0 - 0.8 * std::numbers::pi / 4.0) >= 1e-15) {
            ok = false;
            detail = "anchor vanishing time off";
        }
    }

    for (const auto& sc : cases) {
        const double b_N = std::sqrt(-sc.p.gamma() / sc.p.a);
        const double t0 = std::atan(sc.b0 / b_N) / (b_N * sc.p.a);

        IntegratorConfig cfg;
        cfg.method = Method::RK4;
        cfg.dt = 1e-3;
        cfg.t_end = 1.1 * t0 + 0.05;
        const auto traj = integrate(sc.b0, sc.p, ExpenditureRule::quadratic(), cfg);

        bool found = false;
        for (const auto& ev : traj.events) {
            if (ev.direction != CrossingDirection::DownThroughZero) continue;
            found = true;
            if (std::abs(ev.t_cross - t0) >= kTol) {
                ok = false;
                detail = "crossing error " + std::to_string(ev.t_cross - t0);
            }
            break;
        }
        if (!found) {
            ok = false;
            detail = "no downward crossing detected";
        }
    }
    report(3, "zero crossings match arctan(b0/b_N)/(b_N a) within 1e-6", ok, detail);
}

// 4. Centered finite differences of each closed form reproduce the
//    drift on a 120-point grid per regime.
void criterion_4() {
    constexpr double kH = 1e-6;
    constexpr double kTol = 1e-5;
    constexpr int kPoints = 120;
    std::string detail;
    bool ok = true;

    const auto check_grid = [&](const char* name, auto&& f, const ModelParams& p,
                                double t_lo, double t_hi) {
        for (int i = 0; i < kPoints; ++i) {
            const double t = t_lo + (t_hi - t_lo) * i / (kPoints - 1);
            const double fd = (f(t + kH) - f(t - kH)) / (2.0 * kH);
            const double residual =
                std::abs(fd - drift(f(t), p, ExpenditureRule::quadratic()));
            if (residual >= kTol) {
                ok = false;
                detail = std::string(name) + " residual " + std::to_string(residual);
                return;
            }
        }
    };

    const ModelParams surplus{0.125, 1.0, 13.5, 0.0};
    check_grid(
        "surplus", [&](double t) { return solve_surplus(t, 15.0, surplus); }, surplus,
        kH, 10.0);

    const ModelParams deficit{0.125, 13.5, 1.0, 0.0};
    const double t0 = time_to_zero(10.0, deficit);
    check_grid(
        "deficit", [&](double t) { return solve_deficit(t, 10.0, deficit); }, deficit,
        kH, 0.95 * t0);

    check_grid(
        "debt", [&](double t) { return solve_debt(t, -1.0, deficit); }, deficit, kH,
        5.0);

    const ModelParams balanced{1.0, 2.0, 2.0, 0.0};
    check_grid(
        "balanced", [&](double t) { return solve_balanced(t, 3.0, balanced); },
        balanced, kH, 5.0);

    report(4, "closed forms satisfy the flow equation on all four branches", ok,
           detail);
}

// 5. Measured convergence orders against the surplus closed form.
void criterion_5() {
    constexpr double kBand = 0.3;
    const ModelParams p{0.125, 1.0, 13.5, 0.0};
    const double b0 = 5.0;
    const auto sol = AnalyticSolution::make(b0, p);
    const double dts[] = {1e-1, 5e-2, 2.5e-2, 1.25e-2};

    const auto measured_order = [&](Method method) {
        double errors[4];
        for (int i = 0; i < 4; ++i) {
            IntegratorConfig cfg;
            cfg.method = method;
            cfg.dt = dts[i];
            cfg.t_end = 4.0;
            errors[i] =
                sup_norm_vs_analytic(integrate(b0, p, ExpenditureRule::quadratic(), cfg),
                                     sol);
        }
        double sum = 0.0;
        for (int i = 0; i < 3; ++i) sum += std::log2(errors[i] / errors[i + 1]);
        return sum / 3.0;
    };

    const double euler = measured_order(Method::Euler);
    const double rk4 = measured_order(Method::RK4);
    const bool ok = std::abs(euler - 1.0) <= kBand && std::abs(rk4 - 4.0) <= kBand;
    report(5, "convergence orders: Euler 1.0 +/- 0.3, RK4 4.0 +/- 0.3", ok,
           "measured " + std::to_string(euler) + " and " + std::to_string(rk4));
}

// 6. Solutions scale covariantly: (b0, a, gamma) -> (l*b0, a/l, l*gamma)
//    multiplies the whole trajectory by l.
void criterion_6() {
    constexpr double kRelTol = 1e-10;
    std::mt19937 gen(4103);
    std::string detail;
    bool ok = true;

    for (int i = 0; i < 100; ++i) {
        const double lambda = uniform(gen, 0.2, 4.0);
        const double a = uniform(gen, 0.05, 1.0);
        const double b0 = uniform(gen, 0.5, 12.0);

        double base_b, scaled_b;
        if (i % 2 == 0) {
            const double gamma = uniform(gen, 0.5, 8.0);
            const ModelParams base{a, 10.0, 10.0 + gamma, 0.0};
            const ModelParams scaled{a / lambda, 10.0, 10.0 + lambda * gamma, 0.0};
            const double t = uniform(gen, 0.0, 3.0);
            base_b = solve_surplus(t, b0, base);
            scaled_b = solve_surplus(t, lambda * b0, scaled);
        } else {
            const double gamma = -uniform(gen, 0.5, 8.0);
            const ModelParams base{a, 40.0, 40.0 + gamma, 0.0};
            const ModelParams scaled{a / lambda, 40.0, 40.0 + lambda * gamma, 0.0};
            const double t = 0.9 * time_to_zero(b0, base) * uniform(gen, 0.05, 1.0);
            base_b = solve_deficit(t, b0, base);
            scaled_b = solve_deficit(t, lambda * b0, scaled);
        }
        if (std::abs(scaled_b - lambda * base_b) > kRelTol * std::abs(lambda * base_b)) {
            ok = false;
            detail = "sample " + std::to_string(i) + " breaks covariance";
            break;
        }
    }
    report(6, "scale covariance within 1e-10 relative over 100 samples", ok, detail);
}

// 7. Deficit-into-debt composites are continuous at the switch and then
//    decline at exactly rate gamma.
void criterion_7() {
    constexpr double kJumpTol = 1e-10;
    constexpr double kSlopeTol = 1e-12;
    std::mt19937 gen(4104);
    std::string detail;
    bool ok = true;

    struct Scenario {
        ModelParams p;
        double b0;
    };
    std::vector<Scenario> cases;
    cases.push_back({ModelParams{0.125, 13.5, 1.0, 0.0}, 10.0});
    for (int i = 0; i < 10; ++i) {
        const double a = uniform(gen, 0.05, 1.0);
        cases.push_back(
            {deficit_params(a, -uniform(gen, 0.5, 8.0)), uniform(gen, 0.5, 10.0)});
    }

    for (const auto& sc : cases) {
        const double t0 = time_to_zero(sc.b0, sc.p);
        const auto comp = compose(sc.b0, sc.p, t0 + 2.5);
        if (comp.switch_times.size() != 1) {
            ok = false;
            detail = "expected exactly one switch";
            break;
        }
        const double before = comp.eval(std::nextafter(t0, 0.0));
        const double after = comp.eval(std::nextafter(t0, t0 + 1.0));
        if (std::abs(before - after) >= kJumpTol) {
            ok = false;
            detail = "jump " + std::to_string(before - after);
            break;
        }
        const double slope = comp.eval(t0 + 1.25) - comp.eval(t0 + 0.25);
        if (std::abs(slope - sc.p.gamma()) >= kSlopeTol) {
            ok = false;
            detail = "post-switch slope off by " +
                     std::to_string(slope - sc.p.gamma());
            break;
        }
    }
    report(7, "composites: continuous at the switch, then slope exactly gamma", ok,
           detail);
}

// 8. The savings recurrence compounds by 1 + 1/21 per period when only
//    interest acts, and with r = 0, dt = 1 Euler reproduces it.
void criterion_8() {
    constexpr double kRatioRelTol = 1e-14;
    constexpr double kEulerTol = 1e-12;
    std::string detail;
    bool ok = true;

    const ModelParams saver{1.0, 0.0, 0.0, 0.05};
    const auto no_spending = ExpenditureRule::sqrt_hydro(0.0);
    const double expected_ratio = 1.0 + 1.0 / 21.0;
    double b = 100.0;
    for (int i = 0; i < 10; ++i) {
        const double next = step_discrete(b, saver, no_spending);
        if (std::abs(next / b - expected_ratio) > kRatioRelTol * expected_ratio) {
            ok = false;
            detail = "growth ratio off at step " + std::to_string(i);
        }
        b = next;
    }

    const ModelParams p{0.125, 1.0, 13.5, 0.0};
    const auto discrete = iterate_discrete(3.7, 20, p, ExpenditureRule::quadratic());
    IntegratorConfig cfg;
    cfg.method = Method::Euler;
    cfg.dt = 1.0;
    cfg.t_end = 20.0;
    const auto euler = integrate(3.7, p, ExpenditureRule::quadratic(), cfg, true);
    if (euler.samples.size() != discrete.samples.size()) {
        ok = false;
        detail = "sample counts differ";
    } else {
        for (std::size_t i = 0; i < euler.samples.size(); ++i) {
            if (std::abs(euler.samples[i].b - discrete.samples[i].b) > kEulerTol) {
                ok = false;
                detail = "Euler deviates at step " + std::to_string(i);
                break;
            }
        }
    }
    report(8, "recurrence: ratio 22/21 with r=0.05, Euler dt=1 matches r=0 map", ok,
           detail);
}

// 9. The CLI writes byte-identical files across runs and its CSV
//    re-parses to the exact in-memory samples.
void criterion_9() {
    const std::string cli = BUDGETSIM_CLI_PATH;
    const fs::path cfg_path = fs::path(BUDGETSIM_CONFIG_DIR) / "surplus_upper.json";
    const auto first = harness::scratch_dir() / "acceptance_a.csv";
    const auto second = harness::scratch_dir() / "acceptance_b.csv";
    std::string detail;
    bool ok = true;

    const auto run1 = harness::run_command(cli + " simulate --config " +
                                           cfg_path.string() + " --out " +
                                           first.string());
    const auto run2 = harness::run_command(cli + " simulate --config " +
                                           cfg_path.string() + " --out " +
                                           second.string());
    if (run1.exit_code != 0 || run2.exit_code != 0) {
        ok = false;
        detail = "CLI exited nonzero: " + run1.err + run2.err;
    } else if (harness::read_file(first) != harness::read_file(second)) {
        ok = false;
        detail = "outputs differ between runs";
    } else {
        IntegratorConfig cfg;
        cfg.method = Method::RK4;
        cfg.dt = 0.001;
        cfg.t_end = 4.0;
        const ModelParams p{0.125, 1.0, 13.5, 0.0};
        const auto traj = integrate(15.0, p, ExpenditureRule::quadratic(), cfg);

        std::ifstream in(first);
        const auto parsed = csv::parse_trajectory(in);
        if (parsed.size() != traj.samples.size()) {
            ok = false;
            detail = "re-parsed sample count differs";
        } else {
            for (std::size_t i = 0; i < parsed.size(); ++i) {
                if (parsed[i].t != traj.samples[i].t ||
                    parsed[i].b != traj.samples[i].b) {
                    ok = false;
                    detail = "re-parse differs at row " + std::to_string(i);
                    break;
                }
            }
        }
    }
    report(9, "CLI: byte-identical reruns, CSV re-parses exactly", ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures != 0) {
        std::cout << failures << " criterion check(s) failed\n";
        return 1;
    }
    std::cout << "all 9 criteria passed\n";
    return 0;
}
