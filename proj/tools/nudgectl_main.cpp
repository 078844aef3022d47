// Command-line scenario runner over the nudgectl C API.
//
// Verbs: run, sweep, check, estimate-c, estimate-r2. A run writes norms.csv,
// summary.txt, verdicts.txt, config.txt, optional snapshots.csv and, for twin
// experiments, sync.csv into the output directory.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nudgectl.h"

namespace fs = std::filesystem;

namespace {

struct ConfigDeleter {
    void operator()(nctl_config* c) const { nctl_config_destroy(c); }
};
struct ResultDeleter {
    void operator()(nctl_result* r) const { nctl_result_destroy(r); }
};
using ConfigPtr = std::unique_ptr<nctl_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<nctl_result, ResultDeleter>;

[[noreturn]] void fail(const std::string& message, int code = 2) {
    std::cerr << "nudgectl: " << message << "\n";
    std::exit(code);
}

void check(nctl_status status, const std::string& what) {
    if (status != NCTL_OK) fail(what + ": " + nctl_last_error(), status == NCTL_ERR_PARSE ? 2 : 3);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string get_key(const nctl_config* cfg, const std::string& key) {
    char buf[512];
    check(nctl_config_get(cfg, key.c_str(), buf, sizeof(buf)), "reading key " + key);
    return buf;
}

double get_double(const nctl_config* cfg, const std::string& key) {
    return std::stod(get_key(cfg, key));
}

ConfigPtr load_config(const std::string& scenario, const std::string& config_path,
                      const std::vector<std::string>& overrides) {
    nctl_config* raw = nullptr;
    if (!scenario.empty() && !config_path.empty())
        fail("choose one of --scenario and --config");
    if (!scenario.empty()) {
        check(nctl_config_from_preset(scenario.c_str(), &raw), "loading scenario");
    } else if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) fail("cannot open config file " + config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        check(nctl_config_parse(ss.str().c_str(), &raw), "parsing " + config_path);
    } else {
        fail("one of --scenario or --config is required");
    }
    ConfigPtr cfg(raw);
    for (const auto& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) fail("override must be key=value, got '" + kv + "'");
        check(nctl_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()),
              "override " + kv);
    }
    return cfg;
}

std::vector<double> series(const nctl_result* result, nctl_series id) {
    std::vector<double> out(nctl_result_sample_count(result));
    check(nctl_result_series(result, id, out.data()), "reading series");
    return out;
}

bool has_series(const nctl_result* result, nctl_series id) {
    std::vector<double> probe(nctl_result_sample_count(result));
    return nctl_result_series(result, id, probe.data()) == NCTL_OK;
}

void write_norms_csv(const fs::path& path, const nctl_result* result) {
    std::ofstream out(path);
    out << "t,l2,h1_semi,max_abs,mean,control_active\n";
    auto t = series(result, NCTL_SERIES_T);
    auto l2 = series(result, NCTL_SERIES_L2);
    auto h1s = series(result, NCTL_SERIES_H1_SEMI);
    auto mx = series(result, NCTL_SERIES_MAX_ABS);
    auto mean = series(result, NCTL_SERIES_MEAN);
    auto active = series(result, NCTL_SERIES_CONTROL_ACTIVE);
    for (std::size_t i = 0; i < t.size(); ++i) {
        out << fmt(t[i]) << ',' << fmt(l2[i]) << ',' << fmt(h1s[i]) << ',' << fmt(mx[i]) << ','
            << fmt(mean[i]) << ',' << static_cast<int>(active[i]) << "\n";
    }
}

void write_sync_csv(const fs::path& path, const nctl_result* result) {
    std::ofstream out(path);
    out << "t,sync_l2,sync_h1_semi\n";
    auto t = series(result, NCTL_SERIES_T);
    auto sl = series(result, NCTL_SERIES_SYNC_L2);
    auto sh = series(result, NCTL_SERIES_SYNC_H1_SEMI);
    for (std::size_t i = 0; i < t.size(); ++i)
        out << fmt(t[i]) << ',' << fmt(sl[i]) << ',' << fmt(sh[i]) << "\n";
}

void write_snapshots_csv(const fs::path& path, const nctl_result* result) {
    std::ofstream out(path);
    const std::size_t n = nctl_result_grid_size(result);
    std::vector<double> coords(n);
    check(nctl_result_grid_coords(result, coords.data()), "grid coords");
    out << "x";
    for (double x : coords) out << ',' << fmt(x);
    out << "\n";
    std::vector<double> values(n);
    for (std::size_t s = 0; s < nctl_result_snapshot_count(result); ++s) {
        double t = 0.0;
        check(nctl_result_snapshot(result, s, &t, values.data()), "snapshot");
        out << fmt(t);
        for (double v : values) out << ',' << fmt(v);
        out << "\n";
    }
}

void write_summary(const fs::path& path, const nctl_result* result) {
    nctl_summary s{};
    check(nctl_result_summary(result, &s), "summary");
    std::ofstream out(path);
    out << "final_l2: " << fmt(s.final_l2) << "\n";
    out << "final_max_abs: " << fmt(s.final_max_abs) << "\n";
    out << "peak_max_abs: " << fmt(s.peak_max_abs) << "\n";
    out << "max_abs_mean: " << fmt(s.max_abs_mean) << "\n";
    out << "onset_time: " << (s.onset_time < 0 ? std::string("none") : fmt(s.onset_time)) << "\n";
    if (s.has_decay_fit) {
        out << "decay_rate: " << fmt(s.decay_rate) << "\n";
        out << "decay_r_squared: " << fmt(s.decay_r_squared) << "\n";
        out << "fit_window: [" << fmt(s.fit_t_first) << ", " << fmt(s.fit_t_last) << "]\n";
    } else {
        out << "decay_rate: none\n";
    }
    out << "blowup: " << (s.blowup ? "yes" : "no") << "\n";
    if (s.blowup) out << "blowup_time: " << fmt(s.blowup_time) << "\n";
    out << "max_imag_ratio: " << fmt(s.max_imag_ratio) << "\n";
    if (s.has_sync) {
        out << "sync_final_l2: " << fmt(s.sync_final_l2) << "\n";
        out << "sync_final_h1_semi: " << fmt(s.sync_final_h1_semi) << "\n";
        out << "sync_time_below_1e-6: "
            << (s.sync_time_below_1e6 < 0 ? std::string("never") : fmt(s.sync_time_below_1e6))
            << "\n";
    }
}

void print_verdict(std::ostream& out, const nctl_verdict& v) {
    out << (v.satisfied ? "SATISFIED" : "NOT SATISFIED") << "\n";
    for (int i = 0; i < v.n_terms; ++i) {
        out << "  " << (v.ok[i] ? "[ok]  " : "[FAIL]") << " " << v.name[i] << ": " << fmt(v.lhs[i])
            << (v.strict[i] ? " > " : " >= ") << fmt(v.rhs[i]) << "  (margin " << fmt(v.margin[i])
            << ")\n";
    }
    if (v.commentary[0]) out << "  " << v.commentary << "\n";
}

void write_verdicts(std::ostream& out, const nctl_config* cfg) {
    const std::string model = get_key(cfg, "model");
    int recommended = 0, unstable = 0;
    check(nctl_config_actuators(cfg, &recommended, &unstable), "actuator counts");
    out << "model: " << model << "\n";
    out << "unstable_modes: " << unstable << "\n";
    out << "recommended_actuators: " << recommended << "\n";

    const std::string family = get_key(cfg, "control.family");
    if (family == "none") {
        out << "control: none (no gain condition to check)\n";
        return;
    }
    const double mu = get_double(cfg, "control.mu");
    const double length = get_double(cfg, "grid.length");
    const int n_act = static_cast<int>(get_double(cfg, "control.n_actuators"));

    if (model == "ci") {
        nctl_verdict v{};
        check(nctl_check_ci(get_double(cfg, "params.nu"), get_double(cfg, "params.alpha"), length,
                            n_act, mu, &v),
              "ci condition");
        out << "sufficient condition (finite volume gain bound):\n";
        print_verdict(out, v);
    } else if (model == "kse") {
        double c = get_double(cfg, "control.c_est");
        if (c <= 0.0) {
            const int grid_n = static_cast<int>(get_double(cfg, "grid.n"));
            const int mean_zero = get_key(cfg, "control.mean_zero") == "true" ? 1 : 0;
            const uint64_t seed = static_cast<uint64_t>(get_double(cfg, "seed"));
            check(nctl_estimate_c(family.c_str(), n_act, mean_zero, "periodic", length, grid_n, 100,
                                  seed, &c),
                  "estimating interpolation constant");
            out << "interpolation constant c (estimated, 100 samples): " << fmt(c) << "\n";
        } else {
            out << "interpolation constant c (configured): " << fmt(c) << "\n";
        }
        nctl_verdict v{};
        check(nctl_check_kse_zero(get_double(cfg, "params.nu"), mu, length / n_act, c, &v),
              "kse condition");
        out << "sufficient condition (zero reference):\n";
        print_verdict(out, v);
    } else {
        out << "control: gain conditions are stated for ci and kse only\n";
    }
}

int run_once(const ConfigPtr& cfg, const fs::path& out_dir, int snapshots_stride) {
    ConfigPtr effective(nullptr);
    {
        nctl_config* clone = nullptr;
        check(nctl_config_clone(cfg.get(), &clone), "clone");
        effective.reset(clone);
    }
    if (snapshots_stride > 0)
        check(nctl_config_set(effective.get(), "outputs.snapshot_stride",
                              std::to_string(snapshots_stride).c_str()),
              "snapshot stride");

    nctl_result* raw = nullptr;
    check(nctl_run(effective.get(), &raw), "run");
    ResultPtr result(raw);

    fs::create_directories(out_dir);
    write_norms_csv(out_dir / "norms.csv", result.get());
    write_summary(out_dir / "summary.txt", result.get());
    {
        std::ofstream out(out_dir / "verdicts.txt");
        write_verdicts(out, effective.get());
    }
    {
        std::vector<char> buf(16384);
        size_t len = 0;
        check(nctl_config_format(effective.get(), buf.data(), buf.size(), &len), "config format");
        std::ofstream out(out_dir / "config.txt");
        out.write(buf.data(), static_cast<std::streamsize>(len));
    }
    if (snapshots_stride > 0) write_snapshots_csv(out_dir / "snapshots.csv", result.get());
    if (has_series(result.get(), NCTL_SERIES_SYNC_L2))
        write_sync_csv(out_dir / "sync.csv", result.get());

    nctl_summary s{};
    check(nctl_result_summary(result.get(), &s), "summary");
    std::cout << "wrote " << out_dir.string() << " (final_l2 " << fmt(s.final_l2)
              << (s.blowup ? ", blow-up flagged" : "") << ")\n";
    return 0;
}

std::string sanitize(const std::string& raw) {
    std::string out;
    for (char c : raw)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')
                   ? c
                   : '_';
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"feedback-control simulator for dissipative 1-D PDEs"};
    app.require_subcommand(1);

    std::string scenario, config_path, out_dir, param;
    std::vector<std::string> overrides;
    std::string values_csv;
    int snapshots_stride = 0;
    double burn_in = 100.0;

    auto add_config_flags = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario, "named scenario preset");
        cmd->add_option("--config", config_path, "configuration file");
        cmd->add_option("--override", overrides, "key=value override (repeatable)");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "run one scenario and write its outputs");
    add_config_flags(run_cmd);
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--snapshots-stride", snapshots_stride,
                        "store full fields every n steps and write snapshots.csv");
    run_cmd->add_option("name", scenario, "scenario name (positional)");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a scenario across parameter values");
    add_config_flags(sweep_cmd);
    sweep_cmd->add_option("--out", out_dir, "output directory");
    sweep_cmd->add_option("--param", param, "configuration key to sweep")->required();
    sweep_cmd->add_option("--values", values_csv, "comma-separated values")->required();

    CLI::App* check_cmd = app.add_subcommand("check", "evaluate the gain conditions");
    add_config_flags(check_cmd);
    check_cmd->add_option("name", scenario, "scenario name (positional)");

    std::string family = "finite_volume", boundary = "periodic";
    int n_actuators = 4, grid_n = 256, samples = 100;
    bool mean_zero = false;
    double length = 6.283185307179586;
    std::uint64_t seed = 1;
    CLI::App* est_c = app.add_subcommand("estimate-c", "empirical interpolation constant");
    est_c->add_option("--family", family, "fourier_modes|finite_volume|nodal");
    est_c->add_option("--n", n_actuators, "actuator count");
    est_c->add_option("--grid-n", grid_n, "grid points");
    est_c->add_option("--length", length, "domain length");
    est_c->add_option("--boundary", boundary, "periodic|neumann|dirichlet");
    est_c->add_option("--samples", samples, "random sample count");
    est_c->add_option("--seed", seed, "rng seed");
    est_c->add_flag("--mean-zero", mean_zero, "mean-zero shifted operator");

    CLI::App* est_r2 = app.add_subcommand("estimate-r2", "time-averaged curvature bound of a run");
    add_config_flags(est_r2);
    est_r2->add_option("--burn-in", burn_in, "discard [0, burn_in) before averaging");
    est_r2->add_option("name", scenario, "scenario name (positional)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            ConfigPtr cfg = load_config(scenario, config_path, overrides);
            fs::path out = out_dir.empty() ? fs::path("out") / get_key(cfg.get(), "name")
                                           : fs::path(out_dir);
            return run_once(cfg, out, snapshots_stride);
        }
        if (sweep_cmd->parsed()) {
            ConfigPtr base = load_config(scenario, config_path, overrides);
            fs::path out = out_dir.empty() ? fs::path("out") / (get_key(base.get(), "name") + "_sweep")
                                           : fs::path(out_dir);
            fs::create_directories(out);

            std::vector<std::string> values;
            std::stringstream ss(values_csv);
            std::string item;
            while (std::getline(ss, item, ',')) values.push_back(item);
            if (values.empty()) fail("--values is empty");

            std::ofstream agg(out / "aggregate.csv");
            agg << param << ",final_l2,decay_rate,decay_r_squared,onset_time,blowup,failed\n";
            for (const auto& value : values) {
                nctl_config* clone = nullptr;
                check(nctl_config_clone(base.get(), &clone), "clone");
                ConfigPtr cfg(clone);
                std::string row = value;
                if (nctl_config_set(cfg.get(), param.c_str(), value.c_str()) != NCTL_OK) {
                    std::cerr << "nudgectl: skipping " << param << "=" << value << ": "
                              << nctl_last_error() << "\n";
                    agg << value << ",,,,,,1\n";
                    continue;
                }
                fs::path sub = out / (sanitize(param) + "_" + sanitize(value));
                nctl_result* raw = nullptr;
                if (nctl_run(cfg.get(), &raw) != NCTL_OK) {
                    std::cerr << "nudgectl: run failed for " << param << "=" << value << ": "
                              << nctl_last_error() << "\n";
                    agg << value << ",,,,,,1\n";
                    continue;
                }
                ResultPtr result(raw);
                fs::create_directories(sub);
                write_norms_csv(sub / "norms.csv", result.get());
                write_summary(sub / "summary.txt", result.get());
                nctl_summary s{};
                check(nctl_result_summary(result.get(), &s), "summary");
                agg << value << ',' << fmt(s.final_l2) << ','
                    << (s.has_decay_fit ? fmt(s.decay_rate) : "") << ','
                    << (s.has_decay_fit ? fmt(s.decay_r_squared) : "") << ','
                    << (s.onset_time < 0 ? "" : fmt(s.onset_time)) << ',' << (s.blowup ? 1 : 0)
                    << ",0\n";
            }
            std::cout << "wrote " << (out / "aggregate.csv").string() << "\n";
            return 0;
        }
        if (check_cmd->parsed()) {
            ConfigPtr cfg = load_config(scenario, config_path, overrides);
            write_verdicts(std::cout, cfg.get());
            return 0;
        }
        if (est_c->parsed()) {
            double c = 0.0;
            check(nctl_estimate_c(family.c_str(), n_actuators, mean_zero ? 1 : 0, boundary.c_str(),
                                  length, grid_n, samples, seed, &c),
                  "estimate-c");
            std::cout << "c_est: " << fmt(c) << "\n";
            std::cout << "h: " << fmt(length / n_actuators) << "\n";
            return 0;
        }
        if (est_r2->parsed()) {
            ConfigPtr cfg = load_config(scenario, config_path, overrides);
            nctl_result* raw = nullptr;
            check(nctl_run(cfg.get(), &raw), "run");
            ResultPtr result(raw);
            double r2 = 0.0, drift = 0.0;
            check(nctl_result_attractor_bound(result.get(), burn_in, &r2, &drift), "estimate-r2");
            std::cout << "r2: " << fmt(r2) << "\n";
            std::cout << "drift: " << fmt(drift) << "\n";
            std::cout << "suggested_mu_lower_bound: " << fmt(8.0 * r2) << "  # mu/8 >= sqrt(L/2pi) R2 at L=2pi\n";
            return 0;
        }
    } catch (const std::exception& e) {
        fail(e.what(), 3);
    }
    return 2;
}
