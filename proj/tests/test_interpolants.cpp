#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "core/diagnostics.hpp"
#include "core/interpolants.hpp"

using namespace nudgectl;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double max_pointwise_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

// Independent evaluation of the own-cell piecewise-linear reconstruction used
// by the finite-volume rule, written as a pointwise function so the oracle
// below can integrate it without sharing code with cell_averages().
double reconstruction_at(const Field& f, int n_cells, int k, double x) {
    const Grid1D& g = f.grid;
    const double dx = g.dx();
    int p = -1, q = -1;
    for (int i = 0; i < g.n; ++i) {
        double xi = g.x(i);
        int cell = std::min(static_cast<int>(std::floor(xi * n_cells / g.length)), n_cells - 1);
        if (cell == k) {
            if (p < 0) p = i;
            q = i;
        }
    }
    REQUIRE(p >= 0);
    if (p == q) return f.values[p];
    if (x <= g.x(p)) {
        double s = (f.values[p + 1] - f.values[p]) / dx;
        return f.values[p] + s * (x - g.x(p));
    }
    if (x >= g.x(q)) {
        double s = (f.values[q] - f.values[q - 1]) / dx;
        return f.values[q] + s * (x - g.x(q));
    }
    int i = p + static_cast<int>(std::floor((x - g.x(p)) / dx));
    i = std::min(i, q - 1);
    double w = (x - g.x(i)) / dx;
    return (1.0 - w) * f.values[i] + w * f.values[i + 1];
}

// Brute-force cell average: exact trapezoid quadrature of the reconstruction
// over every elementary piece between breakpoints (grid points, cell edges).
double oracle_cell_average(const Field& f, int n_cells, int k) {
    const Grid1D& g = f.grid;
    const double h = g.length / n_cells;
    const double a = k * h;
    const double b = (k + 1) * h;
    std::vector<double> cuts{a, b};
    for (int i = 0; i < g.n; ++i) {
        double xi = g.x(i);
        if (xi > a && xi < b) cuts.push_back(xi);
    }
    std::sort(cuts.begin(), cuts.end());
    double integral = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        double lo = cuts[j], hi = cuts[j + 1];
        integral += 0.5 * (hi - lo) *
                    (reconstruction_at(f, n_cells, k, lo) + reconstruction_at(f, n_cells, k, hi));
    }
    return integral / h;
}

}  // namespace

TEST_CASE("fourier projection keeps modes below the cutoff") {
    Grid1D g = Grid1D::neumann(1.0, 101);
    Field phi = Field::from_function(g, [](double x) { return std::cos(3.0 * kPi * x); });
    Field proj = fourier_projection(phi, 10);
    CHECK(max_pointwise_diff(phi, proj) < 1e-12 * max_abs(phi));
}

TEST_CASE("fourier projection annihilates modes above the cutoff") {
    Grid1D g = Grid1D::neumann(1.0, 101);
    Field phi = Field::from_function(g, [](double x) { return std::cos(11.0 * kPi * x); });
    Field proj = fourier_projection(phi, 10);
    CHECK(max_abs(proj) < 1e-10);
}

TEST_CASE("fourier projection is linear across the cutoff") {
    Grid1D g = Grid1D::neumann(1.0, 101);
    Field mixed = Field::from_function(
        g, [](double x) { return std::cos(3.0 * kPi * x) + std::cos(11.0 * kPi * x); });
    Field expected = Field::from_function(g, [](double x) { return std::cos(3.0 * kPi * x); });
    Field proj = fourier_projection(mixed, 10);
    CHECK(max_pointwise_diff(proj, expected) < 1e-10);
}

TEST_CASE("fourier projection on periodic grids truncates the dft") {
    Grid1D g = Grid1D::periodic(kTwoPi, 128);
    Field phi = Field::from_function(
        g, [](double x) { return std::sin(2.0 * x) + 0.3 * std::cos(9.0 * x); });
    Field expected = Field::from_function(g, [](double x) { return std::sin(2.0 * x); });
    Field proj = fourier_projection(phi, 5);
    CHECK(max_pointwise_diff(proj, expected) < 1e-12);
}

TEST_CASE("fourier projection error decays spectrally for analytic fields") {
    Grid1D g = Grid1D::periodic(kTwoPi, 128);
    Field phi = Field::from_function(g, [](double x) { return std::exp(std::sin(x)); });
    InterpolantSpec spec;
    spec.family = InterpolantFamily::fourier_modes;
    spec.n_actuators = 8;
    double e8 = interpolation_error(phi, spec).l2_error;
    spec.n_actuators = 16;
    double e16 = interpolation_error(phi, spec).l2_error;
    CHECK(e16 * 10.0 < e8);
}

TEST_CASE("fourier projection rejects too many modes") {
    Grid1D g = Grid1D::periodic(kTwoPi, 32);
    Field phi(g, 1.0);
    CHECK_THROWS(fourier_projection(phi, 16));
}

TEST_CASE("finite volume leaves constants untouched") {
    for (auto g : {Grid1D::periodic(kTwoPi, 64), Grid1D::neumann(1.0, 47)}) {
        Field phi(g, 3.75);
        Field out = finite_volume_interpolant(phi, 5);
        CHECK(max_pointwise_diff(phi, out) < 1e-14 * 3.75);
    }
}

TEST_CASE("finite volume averages of a linear field are exact") {
    Grid1D g = Grid1D::neumann(1.0, 101);
    Field phi = Field::from_function(g, [](double x) { return x; });
    auto avg = cell_averages(phi, 2);
    CHECK(avg[0] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(avg[1] == doctest::Approx(0.75).epsilon(1e-13));

    Field out = finite_volume_interpolant(phi, 2);
    CHECK(out.values[20] == doctest::Approx(0.25).epsilon(1e-13));  // x = 0.2
    CHECK(out.values[50] == doctest::Approx(0.75).epsilon(1e-13));  // x = 0.5 opens cell 2
    CHECK(out.values[75] == doctest::Approx(0.75).epsilon(1e-13));

    // stays exact when the cells do not align with the grid
    Grid1D g2 = Grid1D::neumann(1.0, 97);
    Field lin = Field::from_function(g2, [](double x) { return 2.0 * x + 1.0; });
    auto avg7 = cell_averages(lin, 7);
    for (int k = 0; k < 7; ++k) {
        double a = k / 7.0, b = (k + 1) / 7.0;
        CHECK(avg7[k] == doctest::Approx(a + b + 1.0).epsilon(1e-12));
    }
}

TEST_CASE("finite volume matches the brute-force quadrature oracle") {
    std::mt19937_64 rng(2024);
    for (auto g : {Grid1D::periodic(kTwoPi, 128), Grid1D::neumann(1.0, 101)}) {
        for (int trial = 0; trial < 5; ++trial) {
            Field phi = random_band_limited(g, 6, false, rng);
            for (int n_cells : {8, 7}) {
                auto avg = cell_averages(phi, n_cells);
                for (int k = 0; k < n_cells; ++k)
                    CHECK(avg[k] ==
                          doctest::Approx(oracle_cell_average(phi, n_cells, k)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("all three families are idempotent") {
    std::mt19937_64 rng(7);
    Grid1D g = Grid1D::periodic(kTwoPi, 100);  // 100 points, awkward against N=7
    Field phi = random_band_limited(g, 6, false, rng);
    const double scale = max_abs(phi);

    for (auto family :
         {InterpolantFamily::fourier_modes, InterpolantFamily::finite_volume,
          InterpolantFamily::nodal}) {
        InterpolantSpec spec;
        spec.family = family;
        spec.n_actuators = family == InterpolantFamily::fourier_modes ? 10 : 7;
        Field once = apply_interpolant(phi, spec);
        Field twice = apply_interpolant(once, spec);
        CAPTURE(family_name(family));
        CHECK(max_pointwise_diff(once, twice) < 1e-12 * scale);
    }
}

TEST_CASE("all three families are linear") {
    std::mt19937_64 rng(11);
    Grid1D g = Grid1D::periodic(kTwoPi, 128);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        Field phi = random_band_limited(g, 6, false, rng);
        Field psi = random_band_limited(g, 6, false, rng);
        double a = coef(rng), b = coef(rng);
        Field combo(g);
        for (int i = 0; i < g.n; ++i)
            combo.values[i] = a * phi.values[i] + b * psi.values[i];

        for (auto family :
             {InterpolantFamily::fourier_modes, InterpolantFamily::finite_volume,
              InterpolantFamily::nodal}) {
            for (bool shifted : {false, true}) {
                InterpolantSpec spec;
                spec.family = family;
                spec.n_actuators = 8;
                spec.mean_zero = shifted;
                Field lhs = apply_interpolant(combo, spec);
                Field i_phi = apply_interpolant(phi, spec);
                Field i_psi = apply_interpolant(psi, spec);
                Field rhs(g);
                for (int i = 0; i < g.n; ++i)
                    rhs.values[i] = a * i_phi.values[i] + b * i_psi.values[i];
                CHECK(max_pointwise_diff(lhs, rhs) < 1e-12 * std::max(1.0, max_abs(combo)));
            }
        }
    }
}

TEST_CASE("nodal interpolant picks midpoint values") {
    Grid1D g = Grid1D::neumann(1.0, 101);
    Field phi = Field::from_function(g, [](double x) { return x; });
    Field out = nodal_interpolant(phi, 2, NodeRule::midpoint);
    CHECK(out.values[10] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(out.values[90] == doctest::Approx(0.75).epsilon(1e-13));

    Grid1D gp = Grid1D::periodic(kTwoPi, 128);
    Field s = Field::from_function(gp, [](double x) { return std::sin(x); });
    Field ns = nodal_interpolant(s, 4, NodeRule::midpoint);
    const double expected[4] = {std::sin(kPi / 4), std::sin(3 * kPi / 4), std::sin(5 * kPi / 4),
                                std::sin(7 * kPi / 4)};
    for (int k = 0; k < 4; ++k) {
        int i = k * 32 + 1;  // a point inside cell k
        CHECK(ns.values[i] == doctest::Approx(expected[k]).epsilon(1e-12));
    }
}

TEST_CASE("nodal interpolant leaves constants untouched and rejects bad nodes") {
    Grid1D g = Grid1D::periodic(kTwoPi, 64);
    Field phi(g, -2.5);
    for (auto rule : {NodeRule::midpoint, NodeRule::left}) {
        Field out = nodal_interpolant(phi, 5, rule);
        CHECK(max_pointwise_diff(phi, out) == 0.0);
    }
    CHECK_THROWS(nodal_interpolant(phi, 4, NodeRule::custom, {0.1, 0.2, 5.0, 0.3}));
    CHECK_THROWS(nodal_interpolant(phi, 4, NodeRule::custom, {0.1}));
}

TEST_CASE("mean zero shift removes the spatial average") {
    Grid1D g = Grid1D::periodic(kTwoPi, 128);
    Field c(g, 5.0);
    CHECK(max_abs(mean_zero_shift(c)) < 1e-14);

    std::mt19937_64 rng(3);
    Field phi = random_band_limited(g, 6, true, rng);
    Field shifted = mean_zero_shift(phi);
    CHECK(max_pointwise_diff(phi, shifted) < 1e-12 * std::max(1.0, max_abs(phi)));

    Field fv = finite_volume_interpolant(phi, 5);
    Field fv_shifted = mean_zero_shift(fv);
    CHECK(std::abs(trapezoid_mean(fv_shifted)) < 1e-12 * std::max(1.0, max_abs(fv)));
}

TEST_CASE("interpolation error harness") {
    Grid1D g = Grid1D::periodic(kTwoPi, 256);
    InterpolantSpec spec;
    spec.family = InterpolantFamily::finite_volume;

    SUBCASE("constant fields have zero error and zero ratio") {
        Field c(g, 4.0);
        spec.n_actuators = 8;
        auto e = interpolation_error(c, spec);
        CHECK(e.l2_error == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(e.ratio == 0.0);
        CHECK_FALSE(e.degenerate);
    }

    SUBCASE("first-order convergence in the cell width") {
        Field phi = Field::from_function(g, [](double x) { return std::sin(x); });
        double prev = 0.0;
        for (int n_cells : {4, 8, 16, 32}) {
            spec.n_actuators = n_cells;
            double err = interpolation_error(phi, spec).l2_error;
            if (prev > 0.0) {
                double drop = prev / err;
                CHECK(drop > 1.8);
                CHECK(drop < 2.2);
            }
            prev = err;
        }
    }

    SUBCASE("approximation inequality ratio stays below one") {
        std::mt19937_64 rng(99);
        spec.n_actuators = 16;
        for (int trial = 0; trial < 20; ++trial) {
            Field phi = random_band_limited(g, 6, false, rng);
            auto e = interpolation_error(phi, spec);
            CHECK(e.ratio <= 1.0 + 1e-6);
        }
    }

    SUBCASE("zero seminorm with nonzero error is reported degenerate") {
        Grid1D tiny = Grid1D::periodic(kTwoPi, 16);
        // Nyquist mode: the spectral derivative vanishes but cell averages do not match
        Field nyq = Field::from_function(tiny, [](double x) { return std::cos(8.0 * x); });
        spec.n_actuators = 4;
        auto e = interpolation_error(nyq, spec);
        CHECK(e.degenerate);
    }
}

TEST_CASE("empirical interpolation constants") {
    Grid1D g = Grid1D::periodic(kTwoPi, 256);

    SUBCASE("finite volume stays below the theoretical bound of one") {
        InterpolantSpec spec;
        spec.family = InterpolantFamily::finite_volume;
        spec.n_actuators = 16;
        double c = estimate_interpolation_constant(spec, g, 100, 42);
        CHECK(c > 0.0);
        CHECK(c <= 1.0 + 1e-6);
    }

    SUBCASE("fourier estimate is seed-stable and deterministic") {
        InterpolantSpec spec;
        spec.family = InterpolantFamily::fourier_modes;
        spec.n_actuators = 4;
        spec.mean_zero = true;
        double c1 = estimate_interpolation_constant(spec, g, 150, 1);
        double c2 = estimate_interpolation_constant(spec, g, 150, 2);
        double c1_again = estimate_interpolation_constant(spec, g, 150, 1);
        CHECK(c1 > 0.0);
        CHECK(std::abs(c1 - c2) / c1 < 0.10);
        CHECK(c1 == c1_again);
    }

    SUBCASE("nodal estimate is finite and positive") {
        InterpolantSpec spec;
        spec.family = InterpolantFamily::nodal;
        spec.n_actuators = 8;
        double c = estimate_interpolation_constant(spec, g, 50, 5);
        CHECK(c > 0.0);
        CHECK(std::isfinite(c));
    }
}

TEST_CASE("gamma squared and the volume-element norm inequality") {
    SUBCASE("constant field") {
        Grid1D g = Grid1D::periodic(kTwoPi, 64);
        Field c(g, 2.0);
        CHECK(gamma_squared(c, 5) == doctest::Approx(5 * 4.0).epsilon(1e-13));
    }

    SUBCASE("linear field on the unit interval") {
        Grid1D g = Grid1D::neumann(1.0, 101);
        Field phi = Field::from_function(g, [](double x) { return x; });
        CHECK(gamma_squared(phi, 2) == doctest::Approx(0.625).epsilon(1e-12));
    }

    SUBCASE("norm bounded by cell averages plus derivative content") {
        // ||phi||^2 <= h gamma^2 + (h/pi)^2 ||phi_x||^2, sharp per-cell constant
        Grid1D g = Grid1D::periodic(kTwoPi, 256);
        std::mt19937_64 rng(123);
        const int n_cells = 16;
        const double h = g.length / n_cells;
        for (int trial = 0; trial < 100; ++trial) {
            Field phi = random_band_limited(g, 6, false, rng);
            double l2 = l2_norm(phi);
            double semi = h1_seminorm(phi);
            double rhs = h * gamma_squared(phi, n_cells) + (h / kPi) * (h / kPi) * semi * semi;
            CHECK(l2 * l2 <= rhs * (1.0 + 1e-6));
        }
    }

    SUBCASE("the h/(2 pi) variant of the constant is not attainable") {
        // a single mode with vanishing cell averages overshoots that bound
        Grid1D g = Grid1D::periodic(kTwoPi, 256);
        Field phi = Field::from_function(g, [](double x) { return std::cos(6.0 * x); });
        const int n_cells = 16;
        const double h = g.length / n_cells;
        double l2 = l2_norm(phi);
        double semi = h1_seminorm(phi);
        double rhs_2pi =
            h * gamma_squared(phi, n_cells) + (h / kTwoPi) * (h / kTwoPi) * semi * semi;
        CHECK(l2 * l2 > 1.05 * rhs_2pi);
    }
}

TEST_CASE("spec validation") {
    Grid1D g = Grid1D::periodic(kTwoPi, 32);
    InterpolantSpec spec;
    spec.n_actuators = 40;
    CHECK_THROWS(spec.validate_for(g));

    spec.family = InterpolantFamily::fourier_modes;
    spec.n_actuators = 16;
    CHECK_THROWS(spec.validate_for(g));

    Grid1D rod = Grid1D::dirichlet(kPi, 21);
    spec.n_actuators = 4;
    CHECK_THROWS(spec.validate_for(rod));
}

TEST_CASE("non-finite fields are rejected") {
    Grid1D g = Grid1D::periodic(kTwoPi, 32);
    Field phi(g, 1.0);
    phi.values[7] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(finite_volume_interpolant(phi, 4));
    CHECK_THROWS(mean_zero_shift(phi));
}
