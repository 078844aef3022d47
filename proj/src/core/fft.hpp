// Thin deterministic wrapper around FFTW complex transforms.
#pragma once

#include <complex>
#include <vector>

namespace nudgectl {

using Complex = std::complex<double>;
using SpectralState = std::vector<Complex>;

// One forward/inverse plan pair for a fixed size. Plans are created with
// FFTW_ESTIMATE so repeated runs are bit-identical. Plan creation is
// serialized internally; execution on distinct instances is concurrent-safe.
class Fft {
  public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return n_; }

    SpectralState forward(const SpectralState& u) const;
    SpectralState inverse(const SpectralState& u_hat) const;  // scaled by 1/n

    SpectralState forward_real(const std::vector<double>& u) const;
    // Real part of the inverse transform; |imag|_max is reported separately.
    std::vector<double> inverse_real(const SpectralState& u_hat, double* max_imag = nullptr) const;

    // Signed integer wavenumber of bin j (j - n for j > n/2).
    static int wavenumber(int j, int n);
    // Physical wavenumber 2*pi*k/L, with the Nyquist bin mapped to zero.
    static double kappa(int j, int n, double length);

  private:
    int n_;
    void* plan_fwd_;
    void* plan_bwd_;
    Complex* buf_in_;
    Complex* buf_out_;
};

// Thread-local plan cache. Instances are not shareable across threads (the
// transform buffers are per-object), so each thread keeps its own.
const Fft& shared_fft(int n);

}  // namespace nudgectl
