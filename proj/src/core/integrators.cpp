#include "integrators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "diagnostics.hpp"

namespace nudgectl {

void Schedule::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("Schedule: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("Schedule: t_end must be positive");
    if (snapshot_stride < 1) throw std::invalid_argument("Schedule: snapshot stride must be >= 1");
}

int Schedule::step_count() const {
    return static_cast<int>(std::llround(t_end / dt));
}

void check_cfl(double nu, double dt, double dx) {
    const double r = nu * dt / (dx * dx);
    if (!(r < 0.5))
        throw std::invalid_argument("explicit stepper rejected: r = nu dt / dx^2 = " +
                                    std::to_string(r) + " must be < 1/2");
}

Field explicit_fd_step(const Field& u, const std::function<Field(const Field&, double)>& rhs,
                       double dt, double t) {
    Field tendency = rhs(u, t);
    Field out = u;
    for (int i = 0; i < out.size(); ++i) out.values[i] += dt * tendency.values[i];
    return out;
}

namespace {

struct Recorder {
    Trajectory traj;
    const Schedule* schedule;
    const ControlConfig* control;
    const Trajectory* reference = nullptr;
    int steps = 0;

    explicit Recorder(const Schedule& s, const ControlConfig& c) : schedule(&s), control(&c) {
        if (c.reference) reference = c.reference.get();
        traj.snapshot_stride = s.snapshot_stride;
    }

    bool active(double t) const { return control->enabled() && t >= control->t_on; }

    // Returns false once blow-up is detected; the trajectory is truncated there.
    bool record(const Field& u, double t, int step, bool final_step) {
        const double amp = max_abs(u);
        bool finite = true;
        for (double v : u.values)
            if (!std::isfinite(v)) finite = false;
        if (!finite || amp > schedule->blowup_threshold) {
            traj.blowup = true;
            traj.blowup_time = t;
            if (finite) {
                push_row(u, t, amp);
                store_snapshot(u, t);
            }
            return false;
        }
        push_row(u, t, amp);
        if (step % schedule->snapshot_stride == 0 || final_step) store_snapshot(u, t);
        return true;
    }

  private:
    void push_row(const Field& u, double t, double amp) {
        auto& d = traj.diagnostics;
        d.t.push_back(t);
        d.l2.push_back(l2_norm(u));
        d.h1_semi.push_back(h1_seminorm(u));
        d.h1.push_back(h1_norm(u));
        d.max_abs.push_back(amp);
        d.mean.push_back(trapezoid_mean(u));
        d.uxx_l2.push_back(uxx_l2_norm(u));
        d.control_active.push_back(active(t) ? 1 : 0);
        if (reference) {
            Field ref = reference_state(*reference, t);
            Field diff = u;
            for (int i = 0; i < diff.size(); ++i) diff.values[i] -= ref.values[i];
            d.sync_l2.push_back(l2_norm(diff));
            d.sync_h1_semi.push_back(h1_seminorm(diff));
        }
    }

    void store_snapshot(const Field& u, double t) {
        if (!traj.times.empty() && traj.times.back() == t) return;
        traj.times.push_back(t);
        traj.snapshots.push_back(u);
    }
};

}  // namespace

Trajectory run_ci(const ChafeeInfanteParams& p, const Field& u0, const ControlConfig& control,
                  const Schedule& schedule) {
    p.validate();
    control.validate();
    schedule.validate();
    u0.require_finite("run_ci initial condition");
    if (u0.grid.boundary != Boundary::neumann)
        throw std::invalid_argument("run_ci: grid boundary must be neumann");
    check_cfl(p.nu, schedule.dt, u0.grid.dx());

    Recorder rec(schedule, control);
    Field u = u0;
    rec.record(u, 0.0, 0, false);
    const int steps = schedule.step_count();
    for (int m = 1; m <= steps && !rec.traj.blowup; ++m) {
        const double t = (m - 1) * schedule.dt;
        Field tendency;
        if (control.enabled() && t >= control.t_on) {
            Field fb = feedback_term(u, control, t);
            tendency = ci_rhs(u, p, &fb);
        } else {
            tendency = ci_rhs(u, p);
        }
        for (int i = 0; i < u.size(); ++i) u.values[i] += schedule.dt * tendency.values[i];
        if (!rec.record(u, m * schedule.dt, m, m == steps)) break;
    }
    return std::move(rec.traj);
}

Trajectory run_rod(const CatalyticRodParams& p, const Field& u0, const ControlConfig& control,
                   const Schedule& schedule) {
    p.validate();
    control.validate();
    schedule.validate();
    u0.require_finite("run_rod initial condition");
    if (u0.grid.boundary != Boundary::dirichlet)
        throw std::invalid_argument("run_rod: grid boundary must be dirichlet");
    check_cfl(1.0, schedule.dt, u0.grid.dx());

    Recorder rec(schedule, control);
    Field u = u0;
    rec.record(u, 0.0, 0, false);
    const int steps = schedule.step_count();
    for (int m = 1; m <= steps && !rec.traj.blowup; ++m) {
        const double t = (m - 1) * schedule.dt;
        Field tendency;
        if (control.enabled() && t >= control.t_on) {
            Field fb = feedback_term(u, control, t);
            tendency = rod_rhs(u, p, t, &fb);
        } else {
            tendency = rod_rhs(u, p, t);
        }
        for (int i = 0; i < u.size(); ++i) u.values[i] += schedule.dt * tendency.values[i];
        u.values.front() = 0.0;
        u.values.back() = 0.0;
        if (!rec.record(u, m * schedule.dt, m, m == steps)) break;
    }
    return std::move(rec.traj);
}

namespace {

// Projection onto the conjugate-symmetric subspace (real physical fields).
// Without it the antisymmetric component, seeded by FFT roundoff, evolves
// under the bare linear symbol: its unstable low modes grow as exp((k^2 -
// nu k^4) t) with nothing coupling them back to the stabilizing
// nonlinearity, and their leakage eventually corrupts the real field.
void enforce_conjugate_symmetry(SpectralState& u_hat) {
    const int n = static_cast<int>(u_hat.size());
    u_hat[0] = Complex(u_hat[0].real(), 0.0);
    if (n % 2 == 0) u_hat[n / 2] = Complex(u_hat[n / 2].real(), 0.0);
    for (int j = 1; j < n - j; ++j) {
        Complex sym = 0.5 * (u_hat[j] + std::conj(u_hat[n - j]));
        u_hat[j] = sym;
        u_hat[n - j] = std::conj(sym);
    }
}

}  // namespace

Trajectory run_kse(const KseParams& p, const Field& u0, const ControlConfig& control,
                   const Schedule& schedule, const EtdrkOptions& options) {
    p.validate();
    control.validate();
    schedule.validate();
    u0.require_finite("run_kse initial condition");
    if (!u0.grid.is_periodic()) throw std::invalid_argument("run_kse: grid must be periodic");

    const int n = u0.grid.n;
    const Fft& fft = shared_fft(n);

    std::vector<double> symbol(n), symbol_folded(n);
    for (int j = 0; j < n; ++j) {
        // written against the signed integer wavenumber so the Nyquist bin
        // keeps its (heavily damped) k^4 term
        const int k = Fft::wavenumber(j, n);
        symbol[j] = kse_linear_symbol(k, p);
        symbol_folded[j] = symbol[j];
        if (control.fold_into_symbol && k != 0 && std::abs(k) <= control.spec.n_actuators)
            symbol_folded[j] -= control.mu;
    }

    EtdrkCoefficients coeffs_plain =
        etdrk4_coefficients(symbol, schedule.dt, options.contour_points, options.contour_radius);
    EtdrkCoefficients coeffs_folded =
        control.fold_into_symbol
            ? etdrk4_coefficients(symbol_folded, schedule.dt, options.contour_points,
                                  options.contour_radius)
            : EtdrkCoefficients{};

    const bool spatial_feedback = control.enabled() && !control.fold_into_symbol;
    SpectralOp nonlinear = [&](const SpectralState& state, double t) {
        SpectralState out = kse_nonlinear(state, p, fft, options.dealias);
        if (spatial_feedback && t >= control.t_on) {
            Field u(u0.grid);
            u.values = fft.inverse_real(state);
            Field fb = feedback_term(u, control, t);
            SpectralState fb_hat = fft.forward_real(fb.values);
            for (int j = 0; j < n; ++j) out[j] += fb_hat[j];
        }
        return out;
    };
    // folded mode still nudges toward a nonzero reference through the stages
    SpectralOp nonlinear_folded = [&](const SpectralState& state, double t) {
        SpectralState out = kse_nonlinear(state, p, fft, options.dealias);
        if (control.fold_into_symbol && (control.reference || control.reference_steady) &&
            t >= control.t_on) {
            Field ref = control.reference ? reference_state(*control.reference, t)
                                          : *control.reference_steady;
            Field ih = apply_interpolant(ref, control.spec);
            SpectralState ih_hat = fft.forward_real(ih.values);
            for (int j = 0; j < n; ++j) out[j] += control.mu * ih_hat[j];
        }
        return out;
    };

    Recorder rec(schedule, control);
    SpectralState u_hat = fft.forward_real(u0.values);
    Field u = u0;
    rec.record(u, 0.0, 0, false);

    const int steps = schedule.step_count();
    for (int m = 1; m <= steps && !rec.traj.blowup; ++m) {
        const double t = (m - 1) * schedule.dt;
        const bool folded_active = control.fold_into_symbol && t >= control.t_on;
        const EtdrkCoefficients& coeffs = folded_active ? coeffs_folded : coeffs_plain;
        const SpectralOp& op = folded_active ? nonlinear_folded : nonlinear;
        u_hat = etdrk4_step(u_hat, coeffs, op, t);
        enforce_conjugate_symmetry(u_hat);

        double max_imag = 0.0;
        u.values = fft.inverse_real(u_hat, &max_imag);
        const double amp = max_abs(u);
        if (amp > 0.0)
            rec.traj.max_imag_ratio = std::max(rec.traj.max_imag_ratio, max_imag / amp);
        if (!rec.record(u, m * schedule.dt, m, m == steps)) break;
    }
    return std::move(rec.traj);
}

TwinRun run_kse_twin(const KseParams& p, const Field& truth0, const Field& nudged0,
                     const ControlConfig& control, const Schedule& schedule,
                     const EtdrkOptions& options) {
    p.validate();
    control.validate();
    schedule.validate();
    truth0.require_finite("run_kse_twin truth initial condition");
    nudged0.require_finite("run_kse_twin nudged initial condition");
    if (!(truth0.grid == nudged0.grid))
        throw std::invalid_argument("run_kse_twin: grids must match");
    if (!truth0.grid.is_periodic()) throw std::invalid_argument("run_kse_twin: grid must be periodic");
    if (control.fold_into_symbol)
        throw std::invalid_argument("run_kse_twin: folded control is not supported here");

    const int n = truth0.grid.n;
    const Fft& fft = shared_fft(n);

    std::vector<double> symbol(2 * n);
    for (int j = 0; j < n; ++j) {
        symbol[j] = kse_linear_symbol(Fft::wavenumber(j, n), p);
        symbol[n + j] = symbol[j];
    }
    EtdrkCoefficients coeffs =
        etdrk4_coefficients(symbol, schedule.dt, options.contour_points, options.contour_radius);

    // pair state: truth in [0, n), nudged in [n, 2n)
    SpectralOp nonlinear = [&](const SpectralState& pair, double t) {
        SpectralState truth_hat(pair.begin(), pair.begin() + n);
        SpectralState nudged_hat(pair.begin() + n, pair.end());
        SpectralState out(2 * n);
        SpectralState nt = kse_nonlinear(truth_hat, p, fft, options.dealias);
        SpectralState nn = kse_nonlinear(nudged_hat, p, fft, options.dealias);
        if (control.enabled() && t >= control.t_on) {
            Field u(truth0.grid), ref(truth0.grid);
            u.values = fft.inverse_real(nudged_hat);
            ref.values = fft.inverse_real(truth_hat);
            Field fb_u = apply_interpolant(u, control.spec);
            Field fb_ref = apply_interpolant(ref, control.spec);
            for (int i = 0; i < n; ++i)
                fb_u.values[i] = -control.mu * (fb_u.values[i] - fb_ref.values[i]);
            SpectralState fb_hat = fft.forward_real(fb_u.values);
            for (int j = 0; j < n; ++j) nn[j] += fb_hat[j];
        }
        std::copy(nt.begin(), nt.end(), out.begin());
        std::copy(nn.begin(), nn.end(), out.begin() + n);
        return out;
    };

    ControlConfig recorder_cfg = control;
    recorder_cfg.reference.reset();
    ControlConfig truth_cfg;  // the truth itself runs uncontrolled
    Recorder truth_rec(schedule, truth_cfg);
    Recorder nudged_rec(schedule, recorder_cfg);

    SpectralState pair(2 * n);
    {
        SpectralState t_hat = fft.forward_real(truth0.values);
        SpectralState n_hat = fft.forward_real(nudged0.values);
        std::copy(t_hat.begin(), t_hat.end(), pair.begin());
        std::copy(n_hat.begin(), n_hat.end(), pair.begin() + n);
    }

    Field truth = truth0, nudged = nudged0;
    auto record_both = [&](double t, int step, bool final_step) {
        bool ok = truth_rec.record(truth, t, step, final_step);
        ok = nudged_rec.record(nudged, t, step, final_step) && ok;
        auto& d = nudged_rec.traj.diagnostics;
        if (d.t.size() > d.sync_l2.size()) {
            Field diff = nudged;
            for (int i = 0; i < n; ++i) diff.values[i] -= truth.values[i];
            d.sync_l2.push_back(l2_norm(diff));
            d.sync_h1_semi.push_back(h1_seminorm(diff));
        }
        return ok;
    };
    record_both(0.0, 0, false);

    const int steps = schedule.step_count();
    for (int m = 1; m <= steps; ++m) {
        pair = etdrk4_step(pair, coeffs, nonlinear, (m - 1) * schedule.dt);
        SpectralState t_hat(pair.begin(), pair.begin() + n);
        SpectralState n_hat(pair.begin() + n, pair.end());
        enforce_conjugate_symmetry(t_hat);
        enforce_conjugate_symmetry(n_hat);
        std::copy(t_hat.begin(), t_hat.end(), pair.begin());
        std::copy(n_hat.begin(), n_hat.end(), pair.begin() + n);

        double imag_t = 0.0, imag_n = 0.0;
        truth.values = fft.inverse_real(t_hat, &imag_t);
        nudged.values = fft.inverse_real(n_hat, &imag_n);
        double amp = std::max(max_abs(truth), max_abs(nudged));
        if (amp > 0.0) {
            double ratio = std::max(imag_t, imag_n) / amp;
            nudged_rec.traj.max_imag_ratio = std::max(nudged_rec.traj.max_imag_ratio, ratio);
        }
        if (!record_both(m * schedule.dt, m, m == steps)) break;
    }

    TwinRun out;
    out.truth = std::move(truth_rec.traj);
    out.nudged = std::move(nudged_rec.traj);
    return out;
}

}  // namespace nudgectl
