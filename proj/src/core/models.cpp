#include "models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nudgectl {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* model_name(ModelId m) {
    switch (m) {
        case ModelId::chafee_infante: return "ci";
        case ModelId::kse: return "kse";
        case ModelId::catalytic_rod: return "rod";
    }
    return "?";
}

void ChafeeInfanteParams::validate() const {
    if (!(nu > 0) || !(alpha > 0) || !(length > 0))
        throw std::invalid_argument("ChafeeInfanteParams: nu, alpha, length must be positive");
}

void KseParams::validate() const {
    if (!(nu > 0) || !(gamma > 0) || !(length > 0))
        throw std::invalid_argument("KseParams: nu, gamma, length must be positive");
}

void CatalyticRodParams::validate() const {
    if (!(beta_t > 0) || !(beta_u > 0) || !(gamma_act > 0))
        throw std::invalid_argument("CatalyticRodParams: beta_t, beta_u, gamma_act must be positive");
    if (!(length > 0)) throw std::invalid_argument("CatalyticRodParams: length must be positive");
}

Field ci_rhs(const Field& u, const ChafeeInfanteParams& p, const Field* control) {
    p.validate();
    u.require_finite("ci_rhs");
    if (u.grid.boundary != Boundary::neumann)
        throw std::invalid_argument("ci_rhs: grid boundary must be neumann");
    if (control && !(control->grid == u.grid))
        throw std::invalid_argument("ci_rhs: control grid mismatch");

    const int n = u.size();
    const double dx2 = u.grid.dx() * u.grid.dx();
    Field out(u.grid);
    for (int i = 0; i < n; ++i) {
        // ghost reflection u_{-1} = u_1, u_n = u_{n-2}
        double left = (i == 0) ? u.values[1] : u.values[i - 1];
        double right = (i == n - 1) ? u.values[n - 2] : u.values[i + 1];
        double uxx = (left - 2.0 * u.values[i] + right) / dx2;
        double v = u.values[i];
        out.values[i] = p.nu * uxx + p.alpha * v - v * v * v;
        if (control) out.values[i] += control->values[i];
    }
    return out;
}

double kse_linear_symbol(int k, const KseParams& p) {
    const double q = 2.0 * kPi * k / p.length;
    return p.gamma * q * q - p.nu * q * q * q * q;
}

SpectralState kse_nonlinear(const SpectralState& u_hat, const KseParams& p, const Fft& fft,
                            bool dealias) {
    const int n = fft.size();
    if (static_cast<int>(u_hat.size()) != n)
        throw std::invalid_argument("kse_nonlinear: state size mismatch");

    SpectralState state = u_hat;
    if (dealias) {
        for (int j = 0; j < n; ++j)
            if (std::abs(Fft::wavenumber(j, n)) > n / 3) state[j] = Complex(0.0, 0.0);
    }
    std::vector<double> u = fft.inverse_real(state);
    for (auto& v : u) v *= v;
    SpectralState q_hat = fft.forward_real(u);
    for (int j = 0; j < n; ++j) {
        double kap = Fft::kappa(j, n, p.length);
        q_hat[j] *= Complex(0.0, -0.5 * kap);  // -(1/2) d/dx of u^2
        if (dealias && std::abs(Fft::wavenumber(j, n)) > n / 3) q_hat[j] = Complex(0.0, 0.0);
    }
    q_hat[0] = Complex(0.0, 0.0);
    return q_hat;
}

Field rod_rhs(const Field& u, const CatalyticRodParams& p, double t, const Field* control) {
    p.validate();
    u.require_finite("rod_rhs");
    if (u.grid.boundary != Boundary::dirichlet)
        throw std::invalid_argument("rod_rhs: grid boundary must be dirichlet");
    if (control && !(control->grid == u.grid))
        throw std::invalid_argument("rod_rhs: control grid mismatch");

    const int n = u.size();
    const double dx2 = u.grid.dx() * u.grid.dx();
    const double bt = p.beta_t_at(t);
    const double base = std::exp(-p.gamma_act);
    Field out(u.grid, 0.0);
    for (int i = 1; i < n - 1; ++i) {
        double v = u.values[i];
        if (1.0 + v <= 0.0)
            throw std::runtime_error("rod_rhs: 1 + u <= 0 at x=" + std::to_string(u.grid.x(i)) +
                                     " (exponential singularity)");
        double uxx = (u.values[i - 1] - 2.0 * v + u.values[i + 1]) / dx2;
        // factored so the two beta_t terms cancel bitwise at u = 0
        double reaction = bt * (std::exp(-p.gamma_act / (1.0 + v)) - base);
        double ctrl = control ? control->values[i] : 0.0;
        out.values[i] = uxx + reaction + p.beta_u * (ctrl - v);
    }
    // Dirichlet ends stay pinned at zero.
    return out;
}

int count_unstable_modes(const ChafeeInfanteParams& p) {
    // Counted against the bound k^2 < alpha L^2 / nu, including the constant
    // mode k = 0 admitted by the no-flux boundary.
    p.validate();
    const double bound = p.alpha * p.length * p.length / p.nu;
    int count = 0;
    for (int k = 0; static_cast<double>(k) * k < bound; ++k) ++count;
    return count;
}

int count_unstable_modes(const KseParams& p) {
    p.validate();
    int count = 0;
    for (int k = 1; kse_linear_symbol(k, p) > 0.0; ++k) ++count;
    return count;
}

int count_unstable_modes(const CatalyticRodParams& p) {
    p.validate();
    const double gain = p.beta_t * p.gamma_act * std::exp(-p.gamma_act) - p.beta_u;
    int count = 0;
    const double scale = kPi / p.length;
    for (int k = 1; -(k * scale) * (k * scale) + gain > 0.0; ++k) ++count;
    return count;
}

}  // namespace nudgectl
