#include "etdrk4.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nudgectl {

EtdrkCoefficients etdrk4_coefficients(const std::vector<double>& symbol, double dt,
                                      int contour_points, double contour_radius) {
    if (!(dt > 0.0)) throw std::invalid_argument("etdrk4_coefficients: dt must be positive");
    if (contour_points < 16)
        throw std::invalid_argument("etdrk4_coefficients: need at least 16 contour points");
    if (!(contour_radius > 0.0))
        throw std::invalid_argument("etdrk4_coefficients: radius must be positive");

    const std::size_t n = symbol.size();
    EtdrkCoefficients c;
    c.dt = dt;
    c.contour_points = contour_points;
    c.contour_radius = contour_radius;
    c.e_half.resize(n);
    c.e_full.resize(n);
    c.q.resize(n);
    c.f1.resize(n);
    c.f2.resize(n);
    c.f3.resize(n);

    std::vector<Complex> ring(contour_points);
    for (int m = 0; m < contour_points; ++m) {
        double theta = std::numbers::pi * (m + 0.5) / contour_points * 2.0;
        ring[m] = contour_radius * std::exp(Complex(0.0, theta));
    }

    for (std::size_t j = 0; j < n; ++j) {
        const double ldt = symbol[j] * dt;
        c.e_half[j] = std::exp(0.5 * ldt);
        c.e_full[j] = std::exp(ldt);
        Complex q_sum = 0.0, f1_sum = 0.0, f2_sum = 0.0, f3_sum = 0.0;
        for (int m = 0; m < contour_points; ++m) {
            const Complex z = ldt + ring[m];
            const Complex ez = std::exp(z);
            const Complex z2 = z * z;
            const Complex z3 = z2 * z;
            q_sum += (std::exp(0.5 * z) - 1.0) / z;
            f1_sum += (-4.0 - z + ez * (4.0 - 3.0 * z + z2)) / z3;
            f2_sum += (2.0 + z + ez * (-2.0 + z)) / z3;
            f3_sum += (-4.0 - 3.0 * z - z2 + ez * (4.0 - z)) / z3;
        }
        const double scale = dt / contour_points;
        c.q[j] = (q_sum * scale).real();
        c.f1[j] = (f1_sum * scale).real();
        c.f2[j] = (f2_sum * scale).real();
        c.f3[j] = (f3_sum * scale).real();
    }
    return c;
}

SpectralState etdrk4_step(const SpectralState& u_hat, const EtdrkCoefficients& c,
                          const SpectralOp& nonlinear, double t) {
    const std::size_t n = u_hat.size();
    if (c.size() != n) throw std::invalid_argument("etdrk4_step: coefficient size mismatch");

    auto has_nonlinear = static_cast<bool>(nonlinear);
    if (!has_nonlinear) {
        SpectralState out(n);
        for (std::size_t j = 0; j < n; ++j) out[j] = u_hat[j] * c.e_full[j];
        return out;
    }

    const double half = 0.5 * c.dt;
    SpectralState nv = nonlinear(u_hat, t);

    SpectralState a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = c.e_half[j] * u_hat[j] + c.q[j] * nv[j];
    SpectralState na = nonlinear(a, t + half);

    SpectralState b(n);
    for (std::size_t j = 0; j < n; ++j) b[j] = c.e_half[j] * u_hat[j] + c.q[j] * na[j];
    SpectralState nb = nonlinear(b, t + half);

    SpectralState s(n);
    for (std::size_t j = 0; j < n; ++j)
        s[j] = c.e_half[j] * a[j] + c.q[j] * (2.0 * nb[j] - nv[j]);
    SpectralState nc = nonlinear(s, t + c.dt);

    SpectralState out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = c.e_full[j] * u_hat[j] + c.f1[j] * nv[j] + 2.0 * c.f2[j] * (na[j] + nb[j]) +
                 c.f3[j] * nc[j];
    }
    return out;
}

}  // namespace nudgectl
