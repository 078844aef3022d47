#include "nudgectl.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "core/control.hpp"
#include "core/diagnostics.hpp"
#include "core/interpolants.hpp"
#include "core/scenario.hpp"

using namespace nudgectl;

struct nctl_config {
    Scenario scenario;
};

struct nctl_result {
    RunResult result;
    std::shared_ptr<nctl_result> keepalive;  // released by nctl_result_destroy

    std::shared_ptr<const Trajectory> shared_trajectory() const {
        // aliasing constructor: the trajectory stays alive with the handle
        return std::shared_ptr<const Trajectory>(keepalive, &result.trajectory);
    }
};

namespace {

thread_local std::string g_last_error = "";

void store_error(const std::string& message) {
    g_last_error = message;
}

template <typename Fn>
nctl_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        store_error(e.what());
        return NCTL_ERR_INVALID_ARG;
    } catch (const std::exception& e) {
        store_error(e.what());
        return NCTL_ERR_RUNTIME;
    }
}

nctl_status require(bool ok, const char* message) {
    if (ok) return NCTL_OK;
    store_error(message);
    return NCTL_ERR_INVALID_ARG;
}

nctl_status copy_string(const std::string& s, char* buf, size_t cap, size_t* len) {
    if (len) *len = s.size();
    if (!buf) {
        store_error("output buffer is null");
        return NCTL_ERR_INVALID_ARG;
    }
    if (cap < s.size() + 1) {
        store_error("buffer of " + std::to_string(cap) + " bytes cannot hold " +
                    std::to_string(s.size() + 1));
        return NCTL_ERR_BUFFER;
    }
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return NCTL_OK;
}

void fill_verdict(const ConditionVerdict& v, nctl_verdict* out) {
    std::memset(out, 0, sizeof(*out));
    out->satisfied = v.satisfied ? 1 : 0;
    out->n_terms = static_cast<int>(std::min<std::size_t>(v.terms.size(), NCTL_VERDICT_MAX_TERMS));
    for (int i = 0; i < out->n_terms; ++i) {
        const SubCondition& s = v.terms[i];
        std::strncpy(out->name[i], s.name.c_str(), sizeof(out->name[i]) - 1);
        out->lhs[i] = s.lhs;
        out->rhs[i] = s.rhs;
        out->margin[i] = s.margin;
        out->strict[i] = s.strict ? 1 : 0;
        out->ok[i] = s.ok ? 1 : 0;
    }
    std::strncpy(out->commentary, v.commentary.c_str(), sizeof(out->commentary) - 1);
}

nctl_result* wrap_result(RunResult&& r) {
    auto holder = std::make_shared<nctl_result>();
    holder->result = std::move(r);
    holder->keepalive = holder;
    return holder.get();
}

const std::vector<double>* series_by_id(const RunDiagnostics& d, nctl_series id,
                                        std::vector<double>& scratch) {
    switch (id) {
        case NCTL_SERIES_T: return &d.t;
        case NCTL_SERIES_L2: return &d.l2;
        case NCTL_SERIES_H1_SEMI: return &d.h1_semi;
        case NCTL_SERIES_H1: return &d.h1;
        case NCTL_SERIES_MAX_ABS: return &d.max_abs;
        case NCTL_SERIES_MEAN: return &d.mean;
        case NCTL_SERIES_UXX_L2: return &d.uxx_l2;
        case NCTL_SERIES_CONTROL_ACTIVE:
            scratch.assign(d.control_active.begin(), d.control_active.end());
            return &scratch;
        case NCTL_SERIES_SYNC_L2: return d.sync_l2.empty() ? nullptr : &d.sync_l2;
        case NCTL_SERIES_SYNC_H1_SEMI: return d.sync_h1_semi.empty() ? nullptr : &d.sync_h1_semi;
    }
    return nullptr;
}

}  // namespace

extern "C" {

const char* nctl_version(void) {
    return "1.0.0";
}

const char* nctl_last_error(void) {
    return g_last_error.c_str();
}

size_t nctl_preset_count(void) {
    return preset_names().size();
}

const char* nctl_preset_name(size_t index) {
    static thread_local std::string name;
    auto names = preset_names();
    if (index >= names.size()) return nullptr;
    name = names[index];
    return name.c_str();
}

nctl_status nctl_config_from_preset(const char* name, nctl_config** out) {
    if (auto s = require(name && out, "name and out must be non-null")) return s;
    return guarded([&] {
        *out = new nctl_config{preset_scenario(name)};
        return NCTL_OK;
    });
}

nctl_status nctl_config_parse(const char* text, nctl_config** out) {
    if (auto s = require(text && out, "text and out must be non-null")) return s;
    try {
        *out = new nctl_config{parse_config(text)};
        return NCTL_OK;
    } catch (const std::exception& e) {
        store_error(e.what());
        return NCTL_ERR_PARSE;
    }
}

nctl_status nctl_config_clone(const nctl_config* cfg, nctl_config** out) {
    if (auto s = require(cfg && out, "cfg and out must be non-null")) return s;
    *out = new nctl_config{cfg->scenario};
    return NCTL_OK;
}

void nctl_config_destroy(nctl_config* cfg) {
    delete cfg;
}

nctl_status nctl_config_set(nctl_config* cfg, const char* key, const char* value) {
    if (auto s = require(cfg && key && value, "cfg, key and value must be non-null")) return s;
    return guarded([&] {
        config_set(cfg->scenario, key, value);
        return NCTL_OK;
    });
}

nctl_status nctl_config_get(const nctl_config* cfg, const char* key, char* buf, size_t cap) {
    if (auto s = require(cfg && key, "cfg and key must be non-null")) return s;
    nctl_status copy_status = NCTL_OK;
    nctl_status guard = guarded([&] {
        copy_status = copy_string(config_get(cfg->scenario, key), buf, cap, nullptr);
        return NCTL_OK;
    });
    return guard != NCTL_OK ? guard : copy_status;
}

nctl_status nctl_config_format(const nctl_config* cfg, char* buf, size_t cap, size_t* len) {
    if (auto s = require(cfg != nullptr, "cfg must be non-null")) return s;
    return copy_string(serialize_config(cfg->scenario), buf, cap, len);
}

nctl_status nctl_config_actuators(const nctl_config* cfg, int* recommended, int* unstable) {
    if (auto s = require(cfg && recommended && unstable, "all arguments must be non-null")) return s;
    return guarded([&] {
        const Scenario& sc = cfg->scenario;
        ActuatorRecommendation r;
        switch (sc.model) {
            case ModelId::chafee_infante:
                r = recommended_actuators(ChafeeInfanteParams{sc.nu, sc.alpha, sc.grid_length});
                break;
            case ModelId::kse: {
                KseParams p;
                p.nu = sc.nu;
                p.gamma = sc.gamma;
                p.length = sc.grid_length;
                r = recommended_actuators(p);
                break;
            }
            case ModelId::catalytic_rod: {
                CatalyticRodParams p;
                p.beta_t = sc.beta_t;
                p.beta_u = sc.beta_u;
                p.gamma_act = sc.gamma_act;
                p.length = sc.grid_length;
                r = recommended_actuators(p);
                break;
            }
        }
        *recommended = r.recommended;
        *unstable = r.unstable_modes;
        return NCTL_OK;
    });
}

nctl_status nctl_run(const nctl_config* cfg, nctl_result** out) {
    if (auto s = require(cfg && out, "cfg and out must be non-null")) return s;
    return guarded([&] {
        RunResult r = run_scenario(cfg->scenario);
        *out = wrap_result(std::move(r));
        return NCTL_OK;
    });
}

nctl_status nctl_run_with_reference(const nctl_config* cfg, const nctl_result* reference,
                                    nctl_result** out) {
    if (auto s = require(cfg && reference && out, "cfg, reference and out must be non-null"))
        return s;
    return guarded([&] {
        RunResult r = run_scenario_with_reference(cfg->scenario, reference->shared_trajectory());
        *out = wrap_result(std::move(r));
        return NCTL_OK;
    });
}

void nctl_result_destroy(nctl_result* result) {
    if (result) result->keepalive.reset();
}

size_t nctl_result_sample_count(const nctl_result* result) {
    return result ? result->result.trajectory.diagnostics.size() : 0;
}

nctl_status nctl_result_series(const nctl_result* result, nctl_series id, double* buf) {
    if (auto s = require(result && buf, "result and buf must be non-null")) return s;
    std::vector<double> scratch;
    const std::vector<double>* src =
        series_by_id(result->result.trajectory.diagnostics, id, scratch);
    if (!src) {
        store_error("series " + std::to_string(static_cast<int>(id)) +
                    " is not available for this run");
        return NCTL_ERR_INVALID_ARG;
    }
    std::memcpy(buf, src->data(), src->size() * sizeof(double));
    return NCTL_OK;
}

size_t nctl_result_grid_size(const nctl_result* result) {
    return result ? static_cast<size_t>(result->result.grid.n) : 0;
}

nctl_status nctl_result_grid_coords(const nctl_result* result, double* buf) {
    if (auto s = require(result && buf, "result and buf must be non-null")) return s;
    const Grid1D& g = result->result.grid;
    for (int i = 0; i < g.n; ++i) buf[i] = g.x(i);
    return NCTL_OK;
}

size_t nctl_result_snapshot_count(const nctl_result* result) {
    return result ? result->result.trajectory.snapshots.size() : 0;
}

nctl_status nctl_result_snapshot(const nctl_result* result, size_t index, double* t_out,
                                 double* values) {
    if (auto s = require(result && t_out && values, "result, t_out and values must be non-null"))
        return s;
    const Trajectory& traj = result->result.trajectory;
    if (index >= traj.snapshots.size()) {
        store_error("snapshot index " + std::to_string(index) + " out of range");
        return NCTL_ERR_INVALID_ARG;
    }
    *t_out = traj.times[index];
    const auto& v = traj.snapshots[index].values;
    std::memcpy(values, v.data(), v.size() * sizeof(double));
    return NCTL_OK;
}

nctl_status nctl_result_summary(const nctl_result* result, nctl_summary* out) {
    if (auto s = require(result && out, "result and out must be non-null")) return s;
    const RunSummary& r = result->result.summary;
    std::memset(out, 0, sizeof(*out));
    out->final_l2 = r.final_l2;
    out->final_max_abs = r.final_max_abs;
    out->peak_max_abs = r.peak_max_abs;
    out->max_abs_mean = r.max_abs_mean;
    out->onset_time = r.onset_time;
    out->has_decay_fit = r.has_decay_fit ? 1 : 0;
    out->decay_rate = r.decay_rate;
    out->decay_r_squared = r.decay_r_squared;
    out->fit_t_first = r.fit_t_first;
    out->fit_t_last = r.fit_t_last;
    out->blowup = r.blowup ? 1 : 0;
    out->blowup_time = r.blowup_time;
    out->max_imag_ratio = r.max_imag_ratio;
    out->has_sync = r.has_sync ? 1 : 0;
    out->sync_final_l2 = r.sync_final_l2;
    out->sync_final_h1_semi = r.sync_final_h1_semi;
    out->sync_time_below_1e6 = r.sync_time_below_1e6;
    return NCTL_OK;
}

nctl_status nctl_result_attractor_bound(const nctl_result* result, double burn_in, double* r2,
                                        double* drift) {
    if (auto s = require(result && r2 && drift, "result, r2 and drift must be non-null")) return s;
    return guarded([&] {
        AttractorBound b = estimate_attractor_bound(result->result.trajectory, burn_in);
        *r2 = b.r2;
        *drift = b.drift;
        return NCTL_OK;
    });
}

nctl_status nctl_check_ci(double nu, double alpha, double length, int n_actuators, double mu,
                          nctl_verdict* out) {
    if (auto s = require(out != nullptr, "out must be non-null")) return s;
    return guarded([&] {
        fill_verdict(check_ci_condition(nu, alpha, length, n_actuators, mu), out);
        return NCTL_OK;
    });
}

nctl_status nctl_check_kse_zero(double nu, double mu, double h, double c, nctl_verdict* out) {
    if (auto s = require(out != nullptr, "out must be non-null")) return s;
    return guarded([&] {
        fill_verdict(check_kse_zero_condition(nu, mu, h, c), out);
        return NCTL_OK;
    });
}

nctl_status nctl_check_kse_reference(double nu, double mu, double h, double c, double r2,
                                     double length, nctl_verdict* out) {
    if (auto s = require(out != nullptr, "out must be non-null")) return s;
    return guarded([&] {
        fill_verdict(check_kse_reference_condition(nu, mu, h, c, r2, length), out);
        return NCTL_OK;
    });
}

nctl_status nctl_estimate_c(const char* family, int n_actuators, int mean_zero,
                            const char* boundary, double length, int grid_n, int samples,
                            uint64_t seed, double* out) {
    if (auto s = require(family && boundary && out, "family, boundary and out must be non-null"))
        return s;
    return guarded([&]() -> nctl_status {
        InterpolantSpec spec;
        std::string fam = family;
        if (fam == "fourier_modes") spec.family = InterpolantFamily::fourier_modes;
        else if (fam == "finite_volume") spec.family = InterpolantFamily::finite_volume;
        else if (fam == "nodal") spec.family = InterpolantFamily::nodal;
        else throw std::invalid_argument("unknown interpolant family '" + fam + "'");
        spec.n_actuators = n_actuators;
        spec.mean_zero = mean_zero != 0;

        std::string b = boundary;
        Grid1D grid;
        if (b == "periodic") grid = Grid1D::periodic(length, grid_n);
        else if (b == "neumann") grid = Grid1D::neumann(length, grid_n);
        else if (b == "dirichlet") grid = Grid1D::dirichlet(length, grid_n);
        else throw std::invalid_argument("unknown boundary '" + b + "'");

        *out = estimate_interpolation_constant(spec, grid, samples, seed);
        return NCTL_OK;
    });
}

nctl_status nctl_fit_decay_rate(const double* t, const double* values, size_t n, double w0,
                                double w1, double* rate, double* r_squared) {
    if (auto s = require(t && values && rate && r_squared, "all arguments must be non-null"))
        return s;
    return guarded([&] {
        std::vector<double> tv(t, t + n), vv(values, values + n);
        DecayFit fit = fit_decay_rate(tv, vv, w0, w1);
        *rate = fit.rate;
        *r_squared = fit.r_squared;
        return NCTL_OK;
    });
}

}  // extern "C"
