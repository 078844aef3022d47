#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace nudgectl {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft::Fft(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("Fft: size must be >= 2");
    buf_in_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    buf_out_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan_fwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_in_),
                                 reinterpret_cast<fftw_complex*>(buf_out_), FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_in_),
                                 reinterpret_cast<fftw_complex*>(buf_out_), FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("Fft: plan creation failed");
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_in_);
    fftw_free(buf_out_);
}

SpectralState Fft::forward(const SpectralState& u) const {
    if (static_cast<int>(u.size()) != n_) throw std::invalid_argument("Fft::forward: size mismatch");
    for (int i = 0; i < n_; ++i) buf_in_[i] = u[i];
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    return SpectralState(buf_out_, buf_out_ + n_);
}

SpectralState Fft::inverse(const SpectralState& u_hat) const {
    if (static_cast<int>(u_hat.size()) != n_)
        throw std::invalid_argument("Fft::inverse: size mismatch");
    for (int i = 0; i < n_; ++i) buf_in_[i] = u_hat[i];
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    SpectralState out(buf_out_, buf_out_ + n_);
    const double scale = 1.0 / n_;
    for (auto& z : out) z *= scale;
    return out;
}

SpectralState Fft::forward_real(const std::vector<double>& u) const {
    if (static_cast<int>(u.size()) != n_)
        throw std::invalid_argument("Fft::forward_real: size mismatch");
    for (int i = 0; i < n_; ++i) buf_in_[i] = Complex(u[i], 0.0);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    return SpectralState(buf_out_, buf_out_ + n_);
}

std::vector<double> Fft::inverse_real(const SpectralState& u_hat, double* max_imag) const {
    SpectralState z = inverse(u_hat);
    std::vector<double> out(n_);
    double worst = 0.0;
    for (int i = 0; i < n_; ++i) {
        out[i] = z[i].real();
        worst = std::max(worst, std::abs(z[i].imag()));
    }
    if (max_imag) *max_imag = worst;
    return out;
}

const Fft& shared_fft(int n) {
    thread_local std::map<int, std::unique_ptr<Fft>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Fft>(n);
    return *slot;
}

int Fft::wavenumber(int j, int n) {
    return j <= n / 2 ? j : j - n;
}

double Fft::kappa(int j, int n, double length) {
    int k = wavenumber(j, n);
    if (n % 2 == 0 && j == n / 2) return 0.0;  // Nyquist bin carries no derivative
    return 2.0 * std::numbers::pi * k / length;
}

}  // namespace nudgectl
