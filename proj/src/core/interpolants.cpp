#include "interpolants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace nudgectl {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* family_name(InterpolantFamily f) {
    switch (f) {
        case InterpolantFamily::fourier_modes: return "fourier_modes";
        case InterpolantFamily::finite_volume: return "finite_volume";
        case InterpolantFamily::nodal: return "nodal";
    }
    return "?";
}

void InterpolantSpec::validate_for(const Grid1D& g) const {
    if (n_actuators < 1) throw std::invalid_argument("InterpolantSpec: n_actuators must be >= 1");
    if (n_actuators > g.n)
        throw std::invalid_argument("InterpolantSpec: more actuators than grid points");
    if (family == InterpolantFamily::fourier_modes) {
        if (g.boundary == Boundary::dirichlet)
            throw std::invalid_argument("fourier_modes: grid must be periodic or neumann");
        if (n_actuators >= g.n / 2)
            throw std::invalid_argument("fourier_modes: N must be below n_points/2, got N=" +
                                        std::to_string(n_actuators) + " on " + std::to_string(g.n) +
                                        " points");
    }
    if (node_rule == NodeRule::custom &&
        static_cast<int>(custom_offsets.size()) != n_actuators && family == InterpolantFamily::nodal)
        throw std::invalid_argument("nodal: custom rule needs one offset per cell");
}

// ---- Fourier projection -------------------------------------------------

namespace {

Field fourier_projection_periodic(const Field& f, int n_modes) {
    const int n = f.grid.n;
    const Fft& fft = shared_fft(n);
    SpectralState u_hat = fft.forward_real(f.values);
    for (int j = 0; j < n; ++j) {
        if (std::abs(Fft::wavenumber(j, n)) > n_modes) u_hat[j] = Complex(0.0, 0.0);
    }
    Field out(f.grid);
    out.values = fft.inverse_real(u_hat);
    return out;
}

// Cosine-series projection on a bounded grid. Coefficients come from the
// composite trapezoid rule, which is discretely orthogonal for the cos(k pi x / L)
// family (DCT-I), so the projection is idempotent.
Field fourier_projection_neumann(const Field& f, int n_modes) {
    const int n = f.grid.n;
    const double L = f.grid.length;
    Field out(f.grid, 0.0);
    std::vector<double> basis(n);
    for (int k = 0; k <= n_modes; ++k) {
        for (int i = 0; i < n; ++i) basis[i] = std::cos(k * kPi * f.grid.x(i) / L);
        double sum = 0.5 * (f.values[0] * basis[0] + f.values[n - 1] * basis[n - 1]);
        for (int i = 1; i < n - 1; ++i) sum += f.values[i] * basis[i];
        double a_k = (k == 0 ? 1.0 : 2.0) * sum * f.grid.dx() / L;
        for (int i = 0; i < n; ++i) out.values[i] += a_k * basis[i];
    }
    return out;
}

}  // namespace

Field fourier_projection(const Field& f, int n_modes) {
    f.require_finite("fourier_projection");
    if (f.grid.boundary == Boundary::dirichlet)
        throw std::invalid_argument("fourier_projection: grid must be periodic or neumann");
    if (n_modes < 0 || n_modes >= f.grid.n / 2)
        throw std::invalid_argument("fourier_projection: N=" + std::to_string(n_modes) +
                                    " too large for " + std::to_string(f.grid.n) + "-point grid");
    return f.grid.is_periodic() ? fourier_projection_periodic(f, n_modes)
                                : fourier_projection_neumann(f, n_modes);
}

// ---- Finite volume ------------------------------------------------------

namespace {

// Index of the cell containing x. Cells are J_k = [(k-1)h, kh) with the last
// cell closed at L.
int cell_of(double x, int n_cells, double length) {
    int k = static_cast<int>(std::floor(x * n_cells / length));
    return std::clamp(k, 0, n_cells - 1);
}

struct CellRange {
    int first;  // first grid index inside the cell
    int last;   // last grid index inside the cell
};

std::vector<CellRange> cell_ranges(const Grid1D& g, int n_cells) {
    std::vector<CellRange> ranges(n_cells, {-1, -1});
    for (int i = 0; i < g.n; ++i) {
        int k = cell_of(g.x(i), n_cells, g.length);
        if (ranges[k].first < 0) ranges[k].first = i;
        ranges[k].last = i;
    }
    for (int k = 0; k < n_cells; ++k) {
        if (ranges[k].first < 0)
            throw std::invalid_argument("finite_volume: cell " + std::to_string(k + 1) +
                                        " contains no grid point (N too large for this grid)");
    }
    return ranges;
}

}  // namespace

std::vector<double> cell_averages(const Field& f, int n_cells) {
    f.require_finite("cell_averages");
    const Grid1D& g = f.grid;
    if (n_cells < 1 || n_cells > g.n)
        throw std::invalid_argument("cell_averages: need 1 <= N <= n_points");
    const double h = g.length / n_cells;
    const double dx = g.dx();
    const auto ranges = cell_ranges(g, n_cells);

    std::vector<double> avg(n_cells);
    for (int k = 0; k < n_cells; ++k) {
        const double a = k * h;
        const double b = (k + 1) * h;
        const int p = ranges[k].first;
        const int q = ranges[k].last;
        double integral = 0.0;
        // full segments between in-cell samples
        for (int i = p; i < q; ++i) integral += 0.5 * dx * (f.values[i] + f.values[i + 1]);
        if (p == q) {
            integral = f.values[p] * (b - a);  // single sample: constant extension
        } else {
            const double slope_lo = (f.values[p + 1] - f.values[p]) / dx;
            const double slope_hi = (f.values[q] - f.values[q - 1]) / dx;
            const double wl = g.x(p) - a;
            const double wr = b - g.x(q);
            // partial edge segments, extended linearly from inside the cell
            integral += wl * f.values[p] - 0.5 * slope_lo * wl * wl;
            integral += wr * f.values[q] + 0.5 * slope_hi * wr * wr;
        }
        avg[k] = integral / h;
    }
    return avg;
}

Field finite_volume_interpolant(const Field& f, int n_cells) {
    const auto avg = cell_averages(f, n_cells);
    Field out(f.grid);
    for (int i = 0; i < f.grid.n; ++i)
        out.values[i] = avg[cell_of(f.grid.x(i), n_cells, f.grid.length)];
    return out;
}

// ---- Nodal values -------------------------------------------------------

Field nodal_interpolant(const Field& f, int n_cells, NodeRule rule,
                        const std::vector<double>& custom_offsets) {
    f.require_finite("nodal_interpolant");
    const Grid1D& g = f.grid;
    if (n_cells < 1 || n_cells > g.n)
        throw std::invalid_argument("nodal_interpolant: need 1 <= N <= n_points");
    if (rule == NodeRule::custom && static_cast<int>(custom_offsets.size()) != n_cells)
        throw std::invalid_argument("nodal_interpolant: custom rule needs one offset per cell");
    const double h = g.length / n_cells;
    const double dx = g.dx();
    const auto ranges = cell_ranges(g, n_cells);

    std::vector<double> node_value(n_cells);
    for (int k = 0; k < n_cells; ++k) {
        double offset = 0.0;
        switch (rule) {
            case NodeRule::midpoint: offset = 0.5 * h; break;
            case NodeRule::left: offset = 0.0; break;
            case NodeRule::custom: offset = custom_offsets[k]; break;
        }
        const double xs = k * h + offset;
        if (offset < 0.0 || offset >= h * (1.0 + 1e-12))
            throw std::invalid_argument("nodal_interpolant: node for cell " + std::to_string(k + 1) +
                                        " lies outside its cell");
        const int p = ranges[k].first;
        const int q = ranges[k].last;
        // Evaluate by linear interpolation between grid samples of the same
        // cell (extending linearly over partial edge segments), which keeps
        // the operator exactly idempotent on grid samples.
        if (p == q) {
            node_value[k] = f.values[p];
        } else if (xs <= g.x(p)) {
            double s = (f.values[p + 1] - f.values[p]) / dx;
            node_value[k] = f.values[p] + s * (xs - g.x(p));
        } else if (xs >= g.x(q)) {
            double s = (f.values[q] - f.values[q - 1]) / dx;
            node_value[k] = f.values[q] + s * (xs - g.x(q));
        } else {
            int i = p + static_cast<int>(std::floor((xs - g.x(p)) / dx));
            i = std::min(i, q - 1);
            double w = (xs - g.x(i)) / dx;
            node_value[k] = (1.0 - w) * f.values[i] + w * f.values[i + 1];
        }
    }

    Field out(f.grid);
    for (int i = 0; i < g.n; ++i)
        out.values[i] = node_value[cell_of(g.x(i), n_cells, g.length)];
    return out;
}

// ---- Mean-zero shift and dispatch ---------------------------------------

Field mean_zero_shift(const Field& f) {
    f.require_finite("mean_zero_shift");
    const double mean = trapezoid_mean(f);
    Field out = f;
    for (auto& v : out.values) v -= mean;
    return out;
}

Field apply_interpolant(const Field& f, const InterpolantSpec& spec) {
    spec.validate_for(f.grid);
    Field out;
    switch (spec.family) {
        case InterpolantFamily::fourier_modes: out = fourier_projection(f, spec.n_actuators); break;
        case InterpolantFamily::finite_volume:
            out = finite_volume_interpolant(f, spec.n_actuators);
            break;
        case InterpolantFamily::nodal:
            out = nodal_interpolant(f, spec.n_actuators, spec.node_rule, spec.custom_offsets);
            break;
    }
    return spec.mean_zero ? mean_zero_shift(out) : out;
}

// ---- Error harness ------------------------------------------------------

InterpolationError interpolation_error(const Field& f, const InterpolantSpec& spec) {
    const Field ih = apply_interpolant(f, spec);
    Field diff(f.grid);
    for (int i = 0; i < f.size(); ++i) diff.values[i] = f.values[i] - ih.values[i];

    Field diff_sq(f.grid);
    for (int i = 0; i < f.size(); ++i) diff_sq.values[i] = diff.values[i] * diff.values[i];
    const double l2_error = std::sqrt(std::max(0.0, trapezoid_integral(diff_sq)));

    const Field fx = derivative(f);
    Field fx_sq(f.grid);
    for (int i = 0; i < f.size(); ++i) fx_sq.values[i] = fx.values[i] * fx.values[i];
    const double h1_semi = std::sqrt(std::max(0.0, trapezoid_integral(fx_sq)));

    const double h = f.grid.length / spec.n_actuators;
    InterpolationError out;
    out.l2_error = l2_error;
    out.h1_seminorm = h1_semi;
    const double scale = max_abs(f);
    if (l2_error <= 1e-14 * std::max(1.0, scale)) {
        out.ratio = 0.0;
    } else if (h1_semi == 0.0) {
        out.ratio = 0.0;
        out.degenerate = true;
    } else {
        out.ratio = l2_error / (h * h1_semi);
    }
    return out;
}

double estimate_interpolation_constant(const InterpolantSpec& spec, const Grid1D& grid,
                                       int sample_count, std::uint64_t seed) {
    if (sample_count < 1)
        throw std::invalid_argument("estimate_interpolation_constant: need sample_count >= 1");
    spec.validate_for(grid);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < sample_count; ++s) {
        Field phi = random_band_limited(grid, 6, spec.mean_zero, rng);
        InterpolationError e = interpolation_error(phi, spec);
        if (!e.degenerate) worst = std::max(worst, e.ratio);
    }
    return worst;
}

double gamma_squared(const Field& f, int n_cells) {
    const auto avg = cell_averages(f, n_cells);
    double sum = 0.0;
    for (double a : avg) sum += a * a;
    return sum;
}

Field random_band_limited(const Grid1D& g, int max_mode, bool zero_mean, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Field out(g, 0.0);
    const double L = g.length;
    if (!zero_mean) {
        double a0 = coef(rng);
        for (auto& v : out.values) v += a0;
    }
    for (int k = 1; k <= max_mode; ++k) {
        switch (g.boundary) {
            case Boundary::periodic: {
                double a = coef(rng), b = coef(rng);
                for (int i = 0; i < g.n; ++i) {
                    double arg = 2.0 * kPi * k * g.x(i) / L;
                    out.values[i] += a * std::cos(arg) + b * std::sin(arg);
                }
                break;
            }
            case Boundary::neumann: {
                double a = coef(rng);
                for (int i = 0; i < g.n; ++i) out.values[i] += a * std::cos(k * kPi * g.x(i) / L);
                break;
            }
            case Boundary::dirichlet: {
                double b = coef(rng);
                for (int i = 0; i < g.n; ++i) out.values[i] += b * std::sin(k * kPi * g.x(i) / L);
                break;
            }
        }
    }
    return out;
}

}  // namespace nudgectl
