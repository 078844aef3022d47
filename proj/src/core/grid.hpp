// 1-D uniform grids and real-valued fields sampled on them.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nudgectl {

enum class Boundary { periodic, neumann, dirichlet };

const char* boundary_name(Boundary b);

// Uniform grid on [0, L]. Periodic grids exclude the point x = L;
// bounded grids (neumann/dirichlet) include both endpoints.
struct Grid1D {
    double length = 0.0;
    int n = 0;
    Boundary boundary = Boundary::periodic;

    Grid1D() = default;
    Grid1D(double L, int n_points, Boundary b);

    static Grid1D periodic(double L, int n_points) { return {L, n_points, Boundary::periodic}; }
    static Grid1D neumann(double L, int n_points) { return {L, n_points, Boundary::neumann}; }
    static Grid1D dirichlet(double L, int n_points) { return {L, n_points, Boundary::dirichlet}; }

    bool is_periodic() const { return boundary == Boundary::periodic; }
    double dx() const { return is_periodic() ? length / n : length / (n - 1); }
    double x(int i) const { return i * dx(); }

    bool operator==(const Grid1D& o) const {
        return length == o.length && n == o.n && boundary == o.boundary;
    }
};

// Real scalar field sampled on a grid. NaN/Inf entries are a hard error
// wherever a field enters an operator; callers use require_finite().
struct Field {
    Grid1D grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid1D& g, double fill = 0.0) : grid(g), values(g.n, fill) {}

    static Field from_function(const Grid1D& g, const std::function<double(double)>& f);

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }

    void require_finite(const char* who) const;
};

// Composite trapezoid rule; on periodic grids the wrap segment is included,
// so every sample carries weight dx.
double trapezoid_integral(const Field& f);
double trapezoid_mean(const Field& f);

double max_abs(const Field& f);

// First derivative: spectral on periodic grids, second-order central with
// one-sided ends on bounded grids.
Field derivative(const Field& f);

// Second derivative: spectral on periodic grids, derivative applied twice
// on bounded grids.
Field second_derivative(const Field& f);

}  // namespace nudgectl
