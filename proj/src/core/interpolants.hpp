// Finite-dimensional interpolant operators used as feedback controllers:
// low-mode Fourier projection, finite-volume (cell-average) elements, and
// nodal values on a coarse mesh of N actuator cells of width h = L/N.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "grid.hpp"

namespace nudgectl {

enum class InterpolantFamily { fourier_modes, finite_volume, nodal };
enum class NodeRule { midpoint, left, custom };

const char* family_name(InterpolantFamily f);

struct InterpolantSpec {
    InterpolantFamily family = InterpolantFamily::finite_volume;
    int n_actuators = 1;
    bool mean_zero = false;
    NodeRule node_rule = NodeRule::midpoint;
    std::vector<double> custom_offsets;  // per-cell node offsets in [0, h), custom rule only
    std::optional<double> c_est;         // empirical approximation constant

    void validate_for(const Grid1D& g) const;
};

// Truncation to wavenumbers <= N: complex exponentials on periodic grids,
// a cosine series on neumann grids. Idempotent by discrete orthogonality.
Field fourier_projection(const Field& f, int n_modes);

// Piecewise-constant field of cell averages. Each average integrates the
// piecewise-linear reconstruction through the grid samples belonging to the
// cell, extending linearly over partial edge segments; the rule is exact for
// linear fields and exactly idempotent on grid samples.
Field finite_volume_interpolant(const Field& f, int n_cells);

// Per-cell averages backing the finite-volume operator (length n_cells).
std::vector<double> cell_averages(const Field& f, int n_cells);

// Piecewise-constant field taking the value at one node per cell.
Field nodal_interpolant(const Field& f, int n_cells, NodeRule rule,
                        const std::vector<double>& custom_offsets = {});

// Subtracts the spatial mean (trapezoid quadrature over the whole domain).
Field mean_zero_shift(const Field& f);

// Applies the spec's family, then the mean-zero shift if requested.
Field apply_interpolant(const Field& f, const InterpolantSpec& spec);

struct InterpolationError {
    double l2_error = 0.0;
    double h1_seminorm = 0.0;
    double ratio = 0.0;      // l2_error / (h * h1_seminorm); 0 when error vanishes
    bool degenerate = false; // nonzero error over a zero seminorm
};

// Test harness for the approximation inequality ||f - I_h f|| <= h ||f_x||.
InterpolationError interpolation_error(const Field& f, const InterpolantSpec& spec);

// Empirical approximation constant: max of ||f - I_h f|| / (h ||f_x||) over
// seeded random trigonometric polynomials (modes <= 6). Deterministic in seed.
double estimate_interpolation_constant(const InterpolantSpec& spec, const Grid1D& grid,
                                       int sample_count, std::uint64_t seed);

// Sum of squared cell averages over the N actuator cells.
double gamma_squared(const Field& f, int n_cells);

// Random band-limited field compatible with the grid's boundary condition.
Field random_band_limited(const Grid1D& g, int max_mode, bool zero_mean, std::mt19937_64& rng);

}  // namespace nudgectl
