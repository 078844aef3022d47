// The three model right-hand sides, their linear symbols, and
// unstable-mode counting.
#pragma once

#include <functional>
#include <optional>

#include "fft.hpp"
#include "grid.hpp"

namespace nudgectl {

enum class ModelId { chafee_infante, kse, catalytic_rod };

const char* model_name(ModelId m);

// u_t = nu u_xx + alpha u - u^3 on [0, L], no-flux boundaries.
struct ChafeeInfanteParams {
    double nu = 1.0;
    double alpha = 100.0;
    double length = 1.0;
    void validate() const;
};

// u_t = -gamma u_xx - nu u_xxxx - u u_x, periodic; rescaled form has
// gamma = 1 on [0, 2*pi].
struct KseParams {
    double nu = 1.0;
    double gamma = 1.0;
    double length = 6.283185307179586476925286766559;
    void validate() const;
};

// Dimensionless catalytic-rod temperature on [0, pi], Dirichlet ends.
// beta_t may carry a bounded time-varying uncertainty theta(t).
struct CatalyticRodParams {
    double beta_t = 50.0;
    double beta_u = 2.0;
    double gamma_act = 4.0;
    double length = 3.1415926535897932384626433832795;
    std::function<double(double)> uncertainty;  // theta(t); empty means zero
    void validate() const;
    double beta_t_at(double t) const { return beta_t + (uncertainty ? uncertainty(t) : 0.0); }
};

// Tendency nu u_xx + alpha u - u^3 + control, Neumann u_xx via ghost-point
// reflection. `control` (if any) is supplied already multiplied by -mu.
Field ci_rhs(const Field& u, const ChafeeInfanteParams& p, const Field* control = nullptr);

// Growth rate of mode k for the linearized KSE: gamma q^2 - nu q^4 with
// q = 2 pi k / L (k^2 - nu k^4 in the rescaled form).
double kse_linear_symbol(int k, const KseParams& p);

// Pseudo-spectral evaluation of -u u_x as -(1/2) d/dx (u^2). The mean mode of
// the output is exactly zero. Optional 2/3-rule dealiasing (off by default).
SpectralState kse_nonlinear(const SpectralState& u_hat, const KseParams& p, const Fft& fft,
                            bool dealias = false);

// Tendency u_xx + beta_t(t) (e^{-g/(1+u)} - e^{-g}) + beta_u (control - u) with
// pinned zero ends. Throws if 1 + u <= 0 anywhere.
Field rod_rhs(const Field& u, const CatalyticRodParams& p, double t, const Field* control = nullptr);

// Number of linearly unstable modes about the zero state.
int count_unstable_modes(const ChafeeInfanteParams& p);
int count_unstable_modes(const KseParams& p);
int count_unstable_modes(const CatalyticRodParams& p);

}  // namespace nudgectl
