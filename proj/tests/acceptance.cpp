// Acceptance suite: one pass/fail line per criterion, covering the
// interpolation inequalities, the linear-growth oracles, the figure
// reproductions, the gain-condition arithmetic, the energy monitor, the twin
// experiment, and the structural invariants.
//
// Criterion 5's finite-volume and nodal clauses pin nu = 4/20 with four
// actuators. At that viscosity the second mode is unstable while its
// cosine-phase component is invisible to four uniform cells or midpoints, so
// the closed loop converges to an attracting state the feedback cannot see,
// for any gain. Those clauses are marked EXPECTED FAIL and verified to fail
// in exactly that way; the suite breaks if they ever pass (or fail
// differently), and the same runs at nu = 4/15 are verified to stabilize.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "core/control.hpp"
#include "core/diagnostics.hpp"
#include "core/integrators.hpp"
#include "core/interpolants.hpp"
#include "core/models.hpp"
#include "core/scenario.hpp"

using namespace nudgectl;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

int g_failures = 0;

struct Criterion {
    std::string title;
    std::vector<std::string> notes;
    bool ok = true;
    double budget_seconds;
    std::chrono::steady_clock::time_point start;

    Criterion(std::string t, double budget)
        : title(std::move(t)), budget_seconds(budget), start(std::chrono::steady_clock::now()) {}

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            notes.push_back("FAILED: " + what);
        }
    }

    void info(const std::string& what) { notes.push_back(what); }

    void finish() {
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > budget_seconds) {
            ok = false;
            notes.push_back("FAILED: runtime " + std::to_string(elapsed) + " s exceeds budget " +
                            std::to_string(budget_seconds) + " s");
        }
        if (!ok) ++g_failures;
        std::printf("[%s] %s (%.2f s)\n", ok ? "PASS" : "FAIL", title.c_str(), elapsed);
        for (const auto& n : notes) std::printf("       %s\n", n.c_str());
    }
};

Field kse_ic(const Grid1D& g, double amp) {
    return Field::from_function(g, [amp](double x) { return amp * std::cos(x) * (1 + std::sin(x)); });
}

double field_l2_diff(const Field& a, const Field& b) {
    Field d = a;
    for (int i = 0; i < d.size(); ++i) d.values[i] -= b.values[i];
    return l2_norm(d);
}

// ---- criterion 1 -----------------------------------------------------------

void criterion_1() {
    Criterion c("criterion 1: volume-element approximation inequalities over 100 random fields",
                5.0);
    Grid1D g = Grid1D::periodic(kTwoPi, 256);
    const int n_cells = 16;
    const double h = g.length / n_cells;
    InterpolantSpec spec;
    spec.family = InterpolantFamily::finite_volume;
    spec.n_actuators = n_cells;

    std::mt19937_64 rng(20240901);
    int literal_constant_violations = 0;
    double worst8 = 0.0, worst9 = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Field phi = random_band_limited(g, 6, false, rng);
        InterpolationError e = interpolation_error(phi, spec);
        c.require(!e.degenerate, "degenerate sample in trial " + std::to_string(trial));
        worst8 = std::max(worst8, e.ratio);

        const double l2 = l2_norm(phi);
        const double semi = h1_seminorm(phi);
        const double rhs_sharp = h * gamma_squared(phi, n_cells) + (h / kPi) * (h / kPi) * semi * semi;
        worst9 = std::max(worst9, l2 * l2 / rhs_sharp);
        const double rhs_2pi =
            h * gamma_squared(phi, n_cells) + (h / kTwoPi) * (h / kTwoPi) * semi * semi;
        if (l2 * l2 > rhs_2pi * (1.0 + 1e-6)) ++literal_constant_violations;
    }
    c.require(worst8 <= 1.0 + 1e-6,
              "difference inequality ratio " + std::to_string(worst8) + " exceeds 1 + 1e-6");
    c.require(worst9 <= 1.0 + 1e-6,
              "norm inequality ratio " + std::to_string(worst9) + " exceeds 1 + 1e-6");
    c.info("worst ||phi - I_h phi|| / (h ||phi_x||) = " + std::to_string(worst8));
    c.info("worst ||phi||^2 / (h gamma^2 + (h/pi)^2 ||phi_x||^2) = " + std::to_string(worst9) +
           " (sharp per-cell constant pi; the h/(2 pi) variant printed in the source material "
           "fails for " +
           std::to_string(literal_constant_violations) + "/100 samples and for any single mode)");
    c.finish();
}

// ---- criterion 2 -----------------------------------------------------------

void criterion_2() {
    Criterion c("criterion 2: linear growth rates from the integrators", 10.0);

    for (double nu : {1.1, 4.0 / 15.0}) {
        KseParams p;
        p.nu = nu;
        Grid1D g = Grid1D::periodic(kTwoPi, 128);
        for (int k : {1, 2, 3}) {
            Field u0 = Field::from_function(g, [k](double x) { return 1e-3 * std::cos(k * x); });
            ControlConfig none;
            Schedule sched;
            sched.dt = 0.01;
            sched.t_end = 1.0;
            sched.snapshot_stride = 1 << 20;
            Trajectory tr = run_kse(p, u0, none, sched);
            double expected = kse_linear_symbol(k, p);
            // keep the window a dozen decades above the roundoff floor
            double window = std::min(1.0, 27.6 / std::max(std::abs(expected), 27.6));
            DecayFit fit = fit_decay_rate(tr.diagnostics.t, tr.diagnostics.l2, 0.0, window);
            c.require(std::abs(fit.rate - expected) <= 1e-3 * std::abs(expected),
                      "kse nu=" + std::to_string(nu) + " k=" + std::to_string(k) + ": fitted " +
                          std::to_string(fit.rate) + " vs " + std::to_string(expected));
        }
    }

    {
        ChafeeInfanteParams p{1.0, 100.0, 1.0};
        Grid1D g = Grid1D::neumann(1.0, 401);
        const double dt = 0.4 * g.dx() * g.dx() / p.nu;
        for (int k : {1, 2, 3}) {
            Field u0 =
                Field::from_function(g, [k](double x) { return 1e-8 * std::cos(k * kPi * x); });
            ControlConfig none;
            Schedule sched;
            sched.dt = dt;
            sched.t_end = 0.02;
            sched.snapshot_stride = 1 << 20;
            Trajectory tr = run_ci(p, u0, none, sched);
            DecayFit fit = fit_decay_rate(tr.diagnostics.t, tr.diagnostics.l2, 0.0, 0.02);
            double expected = p.alpha - p.nu * (k * kPi / p.length) * (k * kPi / p.length);
            c.require(std::abs(fit.rate - expected) <= 1e-3 * std::abs(expected),
                      "ci k=" + std::to_string(k) + ": fitted " + std::to_string(fit.rate) +
                          " vs " + std::to_string(expected));
        }
    }
    c.finish();
}

// ---- criterion 3 -----------------------------------------------------------

void criterion_3() {
    Criterion c("criterion 3: chafee-infante saturation and finite-volume stabilization", 30.0);

    RunResult open = run_scenario(preset_scenario("fig1"));
    c.require(open.summary.final_max_abs >= 9.0 && open.summary.final_max_abs <= 10.01,
              "uncontrolled max|u(1)| = " + std::to_string(open.summary.final_max_abs));
    c.info("uncontrolled run saturates at max|u| = " + std::to_string(open.summary.final_max_abs));

    RunResult closed = run_scenario(preset_scenario("fig2"));
    const auto& d = closed.trajectory.diagnostics;
    DecayFit fit = fit_decay_rate(d.t, d.l2, 0.02, 0.1);
    c.require(fit.rate < -5.0, "controlled decay rate " + std::to_string(fit.rate));
    c.require(d.l2.back() < 1e-2 * d.l2.front(),
              "||u(0.1)|| = " + std::to_string(d.l2.back()) + " not below 1e-2 ||u(0)||");
    c.info("controlled decay rate " + std::to_string(fit.rate) + " on [0.02, 0.1], final/initial = " +
           std::to_string(d.l2.back() / d.l2.front()));
    c.finish();
}

// ---- criterion 4 -----------------------------------------------------------

void criterion_4() {
    Criterion c("criterion 4: kse stability for nu > 1 and destabilization near t = 32", 60.0);

    Scenario stable = preset_scenario("fig3");
    stable.t_end = 60.0;
    RunResult rs = run_scenario(stable);
    bool monotone = true;
    const auto& ds = rs.trajectory.diagnostics;
    for (std::size_t i = 1; i < ds.size(); ++i)
        if (ds.t[i] > 5.0 && ds.l2[i] > ds.l2[i - 1]) monotone = false;
    c.require(monotone, "nu = 1.1 norm is not monotone after t = 5");

    RunResult ru = run_scenario(preset_scenario("fig4"));
    c.require(ru.summary.onset_time >= 28.0 && ru.summary.onset_time <= 36.0,
              "onset at t = " + std::to_string(ru.summary.onset_time));
    DecayFit growth =
        fit_decay_rate(ru.trajectory.diagnostics.t, ru.trajectory.diagnostics.l2, 5.0, 25.0);
    const double expected = 1.0 - 4.0 / 15.0;
    c.require(std::abs(growth.rate - expected) <= 0.05 * expected,
              "mode-1 growth " + std::to_string(growth.rate) + " vs " + std::to_string(expected));
    c.info("onset(|u| > 0.5) at t = " + std::to_string(ru.summary.onset_time) +
           ", growth rate on [5, 25] = " + std::to_string(growth.rate));
    c.finish();
}

// ---- criterion 5 -----------------------------------------------------------

struct ControlledOutcome {
    bool stabilized;
    double rate;
    double r_squared;
    double final_l2;
};

ControlledOutcome controlled_outcome(const Scenario& s) {
    RunResult r = run_scenario(s);
    ControlledOutcome out{};
    out.final_l2 = r.summary.final_l2;
    out.rate = r.summary.has_decay_fit ? r.summary.decay_rate : 0.0;
    out.r_squared = r.summary.has_decay_fit ? r.summary.decay_r_squared : 0.0;
    out.stabilized = r.summary.has_decay_fit && r.summary.decay_rate < 0.0 &&
                     r.summary.decay_r_squared > 0.9 && r.summary.final_l2 < 1e-4;
    return out;
}

void criterion_5() {
    Criterion c(
        "criterion 5: controlled kse with the three interpolant families "
        "(tabulated nu=4/20 volume/nodal clauses are verified EXPECTED FAILs; see decisions log)",
        120.0);

    ControlledOutcome fourier = controlled_outcome(preset_scenario("fig5"));
    c.require(fourier.stabilized,
              "fourier family: rate " + std::to_string(fourier.rate) + ", r2 " +
                  std::to_string(fourier.r_squared) + ", final " + std::to_string(fourier.final_l2));
    c.info("fourier modes (nu=4/15, t_c=40): rate " + std::to_string(fourier.rate) + ", r2 " +
           std::to_string(fourier.r_squared) + ", final l2 " + std::to_string(fourier.final_l2));

    // The tabulated nu = 4/20 runs cannot stabilize: the unstable second
    // mode's cosine phase is invisible to four cells/midpoints (EXPECTED
    // FAIL, see the decisions ledger). The suite verifies that exact outcome.
    ControlledOutcome fv = controlled_outcome(preset_scenario("fig6"));
    std::printf("       [FAIL, expected] finite volume (nu=4/20, NC=4): final l2 %.3f\n",
                fv.final_l2);
    c.require(!fv.stabilized && fv.final_l2 > 1.0,
              "tabulated finite-volume run was expected to settle on the invisible even state");

    ControlledOutcome nodal = controlled_outcome(preset_scenario("fig7"));
    std::printf("       [FAIL, expected] nodal values (nu=4/20, NC=4): final l2 %.3f\n",
                nodal.final_l2);
    c.require(!nodal.stabilized && nodal.final_l2 > 1.0,
              "tabulated nodal run was expected to settle on the invisible even state");

    // The same runs at nu = 4/15 (every invisible mode stable) do stabilize.
    Scenario fv15 = preset_scenario("fig6");
    fv15.nu = 4.0 / 15.0;
    fv15.t_end = 60.0;
    ControlledOutcome fv_ok = controlled_outcome(fv15);
    c.require(fv_ok.stabilized, "finite volume at nu=4/15: rate " + std::to_string(fv_ok.rate) +
                                    ", r2 " + std::to_string(fv_ok.r_squared) + ", final " +
                                    std::to_string(fv_ok.final_l2));
    c.info("finite volume at nu=4/15: rate " + std::to_string(fv_ok.rate) + ", r2 " +
           std::to_string(fv_ok.r_squared) + ", final l2 " + std::to_string(fv_ok.final_l2));

    Scenario nodal15 = preset_scenario("fig7");
    nodal15.nu = 4.0 / 15.0;
    nodal15.t_end = 80.0;
    ControlledOutcome nodal_ok = controlled_outcome(nodal15);
    c.require(nodal_ok.stabilized, "nodal at nu=4/15: rate " + std::to_string(nodal_ok.rate) +
                                       ", r2 " + std::to_string(nodal_ok.r_squared) + ", final " +
                                       std::to_string(nodal_ok.final_l2));
    c.info("nodal values at nu=4/15: rate " + std::to_string(nodal_ok.rate) + ", r2 " +
           std::to_string(nodal_ok.r_squared) + ", final l2 " + std::to_string(nodal_ok.final_l2));
    c.finish();
}

// ---- criterion 6 -----------------------------------------------------------

void criterion_6() {
    Criterion c("criterion 6: catalytic rod open loop, control, and uncertainty", 30.0);

    // The hot state needs t >> 6 from this initial condition: the unstable
    // mode is seeded only through the quadratic interaction (ledger entry).
    Scenario open = preset_scenario("fig8");
    open.t_end = 40.0;
    RunResult ro = run_scenario(open);
    const Field& uf = ro.trajectory.final_state();
    int arg = 0;
    for (int i = 0; i < uf.size(); ++i)
        if (uf.values[i] > uf.values[arg]) arg = i;
    c.require(std::abs(uf.grid.x(arg) - kPi / 2) <= uf.grid.dx() + 1e-12,
              "hot spot at x = " + std::to_string(uf.grid.x(arg)));
    CatalyticRodParams params;
    Field residual = rod_rhs(uf, params, open.t_end);
    c.require(max_abs(residual) < 1e-6, "steady residual " + std::to_string(max_abs(residual)));
    c.info("hot spot at x = " + std::to_string(uf.grid.x(arg)) + " (pi/2 = " +
           std::to_string(kPi / 2) + "), residual " + std::to_string(max_abs(residual)));

    RunResult rc = run_scenario(preset_scenario("fig9"));
    c.require(rc.summary.final_l2 < 1e-6,
              "controlled rod ||u(6)|| = " + std::to_string(rc.summary.final_l2));
    c.info("controlled rod ||u(6)|| = " + std::to_string(rc.summary.final_l2));

    RunResult rt = run_scenario(preset_scenario("fig10"));
    c.require(rt.summary.final_l2 < 1e-3,
              "uncertainty case ||u(6)|| = " + std::to_string(rt.summary.final_l2));
    c.info("uncertainty case ||u(6)|| = " + std::to_string(rt.summary.final_l2));
    c.finish();
}

// ---- criterion 7 -----------------------------------------------------------

void criterion_7() {
    Criterion c("criterion 7: gain-condition arithmetic golden values", 1.0);

    auto v1 = check_ci_condition(1.0, 100.0, 1.0, 10, 4000.0);
    c.require(v1.satisfied && std::abs(v1.terms[0].rhs - 400.0 * kPi * kPi) < 1e-9,
              "ci threshold " + std::to_string(v1.terms[0].rhs));
    auto v2 = check_ci_condition(1.0, 100.0, 1.0, 10, 300.0);
    c.require(!v2.satisfied && !v2.terms[0].ok && v2.terms[1].ok,
              "mu=300 should violate only the gain inequality");
    auto v3 = check_ci_condition(1.0, 5000.0, 1.0, 10, 4000.0);
    c.require(!v3.satisfied && v3.terms[0].ok && !v3.terms[1].ok,
              "alpha=5000 should violate only the mesh inequality");

    auto v4 = check_kse_zero_condition(0.5, 16.0, 0.1, 1.0);
    c.require(v4.satisfied, "nu=0.5 mu=16 h=0.1 should be satisfied");
    auto v5 = check_kse_zero_condition(0.5, 8.0, 0.1, 1.0);
    c.require(!v5.satisfied, "mu = 4/nu exactly must fail the strict inequality");
    auto v6 = check_kse_zero_condition(4.0 / 15.0, 20.0, kTwoPi / 4.0, 1.0);
    c.require(!v6.satisfied && std::abs(v6.terms[1].rhs - 20.0 * std::pow(kPi / 2.0, 4)) < 1e-9,
              "paper-scale parameters must sit outside the hypotheses (rhs " +
                  std::to_string(v6.terms[1].rhs) + ")");

    auto v7 = check_kse_reference_condition(0.5, 16.0, 0.1, 1.0, 0.0, kTwoPi);
    c.require(v7.satisfied, "zero reference should reduce to the zero-state condition");
    auto v8 = check_kse_reference_condition(0.5, 24.0, 0.05, 1.0, 3.0, kTwoPi);
    c.require(v8.satisfied && std::abs(v8.terms[2].margin) < 1e-12,
              "exact boundary of the averaged bound should pass with zero margin");
    auto v9 = check_kse_reference_condition(0.5, 20.0, 0.05, 1.0, 3.0, kTwoPi);
    c.require(!v9.satisfied && v9.terms[2].lhs == 2.5 && v9.terms[2].rhs == 3.0,
              "mu=20 against R2=3 must fail the averaged bound");

    c.info("nu (2 pi N / L)^2 = " + std::to_string(v1.terms[0].rhs) +
           " for L=1, N=10, nu=1; empirical stabilization at mu=300 sits far below it");
    c.finish();
}

// ---- criterion 8 -----------------------------------------------------------

void criterion_8() {
    Criterion c("criterion 8: energy inequality monitor under satisfied gain conditions", 60.0);

    const double nu = 0.5, mu = 16.0;
    const int n_cells = 32;
    Grid1D g = Grid1D::periodic(kTwoPi, 128);
    const double h = g.length / n_cells;

    InterpolantSpec spec;
    spec.family = InterpolantFamily::finite_volume;
    spec.n_actuators = n_cells;
    spec.mean_zero = true;
    const double cc = estimate_interpolation_constant(spec, g, 200, 42);
    ConditionVerdict verdict = check_kse_zero_condition(nu, mu, h, cc);
    c.require(verdict.satisfied, "gain conditions must hold with the empirical constant");
    c.info("empirical c = " + std::to_string(cc) + ", conditions " +
           (verdict.satisfied ? "satisfied" : "violated"));

    KseParams p;
    p.nu = nu;
    ControlConfig ctl;
    ctl.mu = mu;
    ctl.spec = spec;
    Schedule sched;
    sched.dt = 0.125;
    sched.t_end = 30.0;
    sched.snapshot_stride = 1 << 20;
    Trajectory tr = run_kse(p, kse_ic(g, 1.0), ctl, sched);
    c.require(!tr.blowup, "monitored run must stay bounded");

    const auto& d = tr.diagnostics;
    auto residuals = energy_inequality_residuals(tr, nu, mu, h, cc);
    double worst = -1e300;
    int violations = 0;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        double slack = 1e-6 * std::max(d.l2[i + 1] * d.l2[i + 1], sched.dt);
        if (residuals[i] > slack) ++violations;
        worst = std::max(worst, residuals[i]);
    }
    c.require(violations == 0,
              std::to_string(violations) + " residuals above the 1e-6 slack (worst " +
                  std::to_string(worst) + ")");

    const double rate = 1.0 / nu - mu / 4.0;
    int envelope_violations = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double bound = std::exp(rate * d.t[i]) * d.l2[0] * d.l2[0];
        if (d.l2[i] * d.l2[i] > bound * (1.0 + 1e-9) + 1e-300) ++envelope_violations;
    }
    c.require(envelope_violations == 0,
              std::to_string(envelope_violations) + " points above the gronwall envelope");
    c.info("worst residual " + std::to_string(worst) + "; envelope rate " + std::to_string(rate));
    c.finish();
}

// ---- criterion 9 -----------------------------------------------------------

void criterion_9() {
    Criterion c("criterion 9: twin experiment synchronizes in l2 and h1", 120.0);

    RunResult r = run_scenario(preset_scenario("twin"));
    const auto& d = r.trajectory.diagnostics;
    c.require(r.summary.has_sync, "twin run must record synchronization series");
    c.require(r.summary.sync_time_below_1e6 >= 0.0 && r.summary.sync_time_below_1e6 <= 20.0,
              "||u - u*|| fell below 1e-6 at t = " + std::to_string(r.summary.sync_time_below_1e6));

    double h1_below_at = -1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.sync_h1_semi[i] < 1e-4) {
            h1_below_at = d.t[i];
            break;
        }
    }
    c.require(h1_below_at >= 0.0 && h1_below_at <= 20.0,
              "||(u - u*)_x|| fell below 1e-4 at t = " + std::to_string(h1_below_at));
    c.require(r.summary.sync_final_l2 < 1e-6,
              "final sync l2 " + std::to_string(r.summary.sync_final_l2));
    c.require(r.summary.sync_final_h1_semi < 1e-4,
              "final sync h1 " + std::to_string(r.summary.sync_final_h1_semi));
    c.info("||u - u*|| < 1e-6 at t = " + std::to_string(r.summary.sync_time_below_1e6) +
           ", ||(u - u*)_x|| < 1e-4 at t = " + std::to_string(h1_below_at));
    c.finish();
}

// ---- criterion 10 ----------------------------------------------------------

void criterion_10() {
    Criterion c("criterion 10: determinism, invariants, and temporal order", 60.0);

    {
        Scenario s = preset_scenario("fig6");
        s.t_end = 5.0;
        RunResult a = run_scenario(s);
        RunResult b = run_scenario(s);
        bool identical = a.trajectory.diagnostics.size() == b.trajectory.diagnostics.size() &&
                         a.trajectory.snapshots.size() == b.trajectory.snapshots.size();
        if (identical) {
            for (std::size_t i = 0; i < a.trajectory.diagnostics.size(); ++i)
                if (a.trajectory.diagnostics.l2[i] != b.trajectory.diagnostics.l2[i])
                    identical = false;
            for (std::size_t s2 = 0; s2 < a.trajectory.snapshots.size(); ++s2)
                for (int i = 0; i < a.trajectory.snapshots[s2].size(); ++i)
                    if (a.trajectory.snapshots[s2].values[i] != b.trajectory.snapshots[s2].values[i])
                        identical = false;
        }
        c.require(identical, "repeated runs must be bit-identical");
    }

    {
        RunResult r = run_scenario(preset_scenario("fig5"));
        c.require(r.summary.max_abs_mean < 1e-10,
                  "mean drift " + std::to_string(r.summary.max_abs_mean));
        c.require(r.summary.max_imag_ratio < 1e-12,
                  "imaginary leakage " + std::to_string(r.summary.max_imag_ratio));
        c.info("max |mean| = " + std::to_string(r.summary.max_abs_mean) + ", max imag ratio = " +
               std::to_string(r.summary.max_imag_ratio));
    }

    {
        // smooth regime: nu = 1.1 with an order-one state keeps every mode of
        // the stiff tail quiet while the nonlinearity stays active
        KseParams p;
        p.nu = 1.1;
        Grid1D g = Grid1D::periodic(kTwoPi, 128);
        ControlConfig none;
        std::vector<double> dts{0.25, 0.125, 0.0625, 0.03125};
        std::vector<Field> finals;
        for (double dt : dts) {
            Schedule sched;
            sched.dt = dt;
            sched.t_end = 10.0;
            sched.snapshot_stride = 1 << 20;
            finals.push_back(run_kse(p, kse_ic(g, 1.0), none, sched).final_state());
        }
        double e1 = field_l2_diff(finals[0], finals[1]);
        double e3 = field_l2_diff(finals[2], finals[3]);
        // slope of the halving-error curve across the full dt range
        double order = std::log2(e1 / e3) / 2.0;
        c.require(order >= 3.8, "self-convergence order " + std::to_string(order));
        c.info("self-convergence order " + std::to_string(order) + " (halving errors " +
               std::to_string(e1) + " -> " + std::to_string(e3) + ")");
    }
    c.finish();
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    auto start = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d criterion(s) failed; total runtime %.1f s\n", g_failures, elapsed);
    return g_failures == 0 ? 0 : 1;
}
