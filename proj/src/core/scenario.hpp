// Scenario configuration (text key-value contract), the named experiment
// presets, and the run engine that turns a configuration into a trajectory
// plus summary statistics.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "control.hpp"
#include "integrators.hpp"

namespace nudgectl {

enum class ControlFamily { none, fourier_modes, finite_volume, nodal };

struct Scenario {
    std::string name = "custom";
    ModelId model = ModelId::kse;

    int grid_n = 128;
    double grid_length = 6.283185307179586476925286766559;

    // model parameters (the slice relevant to `model` is serialized)
    double nu = 1.0;
    double alpha = 100.0;
    double gamma = 1.0;
    double beta_t = 50.0;
    double beta_u = 2.0;
    double gamma_act = 4.0;
    double uncertainty_amp = 0.0;
    double uncertainty_omega = 0.524;

    double dt = 0.25;
    double t_end = 1.0;

    ControlFamily family = ControlFamily::none;
    int n_actuators = 4;
    double mu = 0.0;
    double t_on = 0.0;
    bool mean_zero = false;
    NodeRule node_rule = NodeRule::midpoint;
    bool fold_symbol = false;
    double c_est = 0.0;  // 0 = unset

    std::string ic_preset = "zero";
    double ic_amplitude = std::numeric_limits<double>::quiet_NaN();  // NaN = preset default
    std::string ic_expression;  // overrides the preset when non-empty

    int snapshot_stride = 4;
    std::uint64_t seed = 1;

    bool twin_enabled = false;
    double twin_spinup = 100.0;
    std::string twin_truth_ic = "kse_cos";

    void validate() const;
    Grid1D make_grid() const;
    Field initial_condition(const Grid1D& g) const;
    InterpolantSpec interpolant_spec() const;
};

// --- configuration text format -------------------------------------------
// One `key = value` pair per line; '#' starts a comment. Keys follow the
// dotted names above (model, grid.n, params.nu, control.mu, ...).

Scenario parse_config(const std::string& text);
std::string serialize_config(const Scenario& s);

// Dotted-key access. Bare keys are resolved against the params/control/
// integrator/grid/ic/outputs groups in that order.
std::string config_get(const Scenario& s, const std::string& key);
void config_set(Scenario& s, const std::string& key, const std::string& value);

std::vector<std::string> preset_names();
Scenario preset_scenario(const std::string& name);

// --- run engine ------------------------------------------------------------

struct RunSummary {
    double final_l2 = 0.0;
    double final_max_abs = 0.0;
    double peak_max_abs = 0.0;
    double max_abs_mean = 0.0;  // max |spatial mean| over the run
    double onset_time = -1.0;   // first time max|u| exceeds 0.5; -1 if never
    bool has_decay_fit = false;
    double decay_rate = 0.0;
    double decay_r_squared = 0.0;
    double fit_t_first = 0.0;
    double fit_t_last = 0.0;
    bool blowup = false;
    double blowup_time = 0.0;
    double max_imag_ratio = 0.0;
    bool has_sync = false;
    double sync_final_l2 = 0.0;
    double sync_final_h1_semi = 0.0;
    double sync_time_below_1e6 = -1.0;  // first time ||u - u*|| < 1e-6 after t_on
};

struct RunResult {
    Grid1D grid;
    Trajectory trajectory;
    RunSummary summary;
};

RunSummary summarize(const Trajectory& traj, const Scenario& s);

// Runs the scenario (including the two truth phases of a twin experiment).
RunResult run_scenario(const Scenario& s);

// Nudge toward an externally supplied reference trajectory (KSE only).
RunResult run_scenario_with_reference(const Scenario& s,
                                      std::shared_ptr<const Trajectory> reference);

}  // namespace nudgectl
