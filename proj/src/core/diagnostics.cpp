#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nudgectl {

namespace {

double quadrature_l2(const Field& u) {
    Field sq(u.grid);
    for (int i = 0; i < u.size(); ++i) sq.values[i] = u.values[i] * u.values[i];
    return std::sqrt(std::max(0.0, trapezoid_integral(sq)));
}

}  // namespace

double l2_norm(const Field& u) {
    return quadrature_l2(u);
}

double h1_seminorm(const Field& u) {
    return quadrature_l2(derivative(u));
}

double h1_norm(const Field& u) {
    const double l2 = l2_norm(u);
    const double semi = h1_seminorm(u);
    const double L = u.grid.length;
    return std::sqrt(l2 * l2 / (L * L) + semi * semi);
}

double uxx_l2_norm(const Field& u) {
    return quadrature_l2(second_derivative(u));
}

DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<double>& values, double w0,
                        double w1) {
    if (t.size() != values.size()) throw std::invalid_argument("fit_decay_rate: length mismatch");
    std::vector<double> ts, logs;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < w0 || t[i] > w1) continue;
        if (!(values[i] > 0.0)) break;  // truncate at the first non-positive sample
        ts.push_back(t[i]);
        logs.push_back(std::log(values[i]));
    }
    if (ts.size() < 10)
        throw std::invalid_argument("fit_decay_rate: only " + std::to_string(ts.size()) +
                                    " usable samples in window (need >= 10)");

    const std::size_t n = ts.size();
    double mt = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mt += ts[i];
        mv += logs[i];
    }
    mt /= n;
    mv /= n;
    double stt = 0.0, stv = 0.0, svv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = ts[i] - mt;
        const double dv = logs[i] - mv;
        stt += dt * dt;
        stv += dt * dv;
        svv += dv * dv;
    }
    if (stt == 0.0) throw std::invalid_argument("fit_decay_rate: degenerate time window");

    DecayFit fit;
    fit.rate = stv / stt;
    fit.r_squared = svv > 0.0 ? (stv * stv) / (stt * svv) : 1.0;
    fit.n_used = n;
    fit.t_first = ts.front();
    fit.t_last = ts.back();
    return fit;
}

AttractorBound estimate_attractor_bound(const Trajectory& traj, double burn_in) {
    if (traj.blowup)
        throw std::runtime_error("estimate_attractor_bound: trajectory is flagged as blown up");
    const auto& d = traj.diagnostics;
    if (d.uxx_l2.size() != d.t.size())
        throw std::runtime_error("estimate_attractor_bound: ||u_xx|| series missing");

    std::vector<double> ts, vals;
    for (std::size_t i = 0; i < d.t.size(); ++i) {
        if (d.t[i] < burn_in) continue;
        ts.push_back(d.t[i]);
        vals.push_back(d.uxx_l2[i] * d.uxx_l2[i]);
    }
    if (ts.size() < 8)
        throw std::runtime_error("estimate_attractor_bound: trajectory shorter than burn-in window");

    auto window_mean = [&](std::size_t first) {
        // trapezoid average of ||u_xx||^2 over [ts[first], ts.back()]
        double integral = 0.0;
        for (std::size_t i = first; i + 1 < ts.size(); ++i)
            integral += 0.5 * (vals[i] + vals[i + 1]) * (ts[i + 1] - ts[i]);
        double span = ts.back() - ts[first];
        return span > 0.0 ? integral / span : vals[first];
    };

    const double full = window_mean(0);
    const double tail = window_mean(ts.size() - std::max<std::size_t>(2, ts.size() / 4));
    AttractorBound out;
    out.r2 = std::sqrt(std::max(0.0, full));
    out.drift = std::abs(tail - full) / std::max(full, 1e-300);
    return out;
}

std::vector<double> energy_inequality_residuals(const Trajectory& traj, double nu, double mu,
                                                double h, double c) {
    const auto& d = traj.diagnostics;
    if (d.uxx_l2.size() != d.t.size())
        throw std::runtime_error("energy_inequality_residuals: ||u_xx|| series missing");
    if (d.size() < 3) return {};

    const double curv_coef = 0.75 * nu - 0.25 * mu * c * h * h * h * h;
    const double growth_coef = 1.0 / nu - mu / 4.0;
    std::vector<double> residuals;
    residuals.reserve(d.size() - 2);
    for (std::size_t i = 1; i + 1 < d.size(); ++i) {
        const double e_prev = d.l2[i - 1] * d.l2[i - 1];
        const double e_here = d.l2[i] * d.l2[i];
        const double e_next = d.l2[i + 1] * d.l2[i + 1];
        const double dedt = (e_next - e_prev) / (d.t[i + 1] - d.t[i - 1]);
        const double lhs = 0.5 * dedt + curv_coef * d.uxx_l2[i] * d.uxx_l2[i];
        residuals.push_back(lhs - growth_coef * e_here);
    }
    return residuals;
}

}  // namespace nudgectl
