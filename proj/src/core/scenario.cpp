#include "scenario.hpp"

#include "diagnostics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nudgectl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid number '" + s + "' for key " + key);
    }
}

int parse_int(const std::string& s, const std::string& key) {
    double v = parse_double(s, key);
    if (v != std::floor(v)) throw std::invalid_argument("expected integer for key " + key);
    return static_cast<int>(v);
}

bool parse_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw std::invalid_argument("expected true/false for key " + key + ", got '" + s + "'");
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

// ---- validation and derived objects ----------------------------------------

void Scenario::validate() const {
    if (grid_n < 3) throw std::invalid_argument("scenario: grid.n must be >= 3");
    if (!(grid_length > 0)) throw std::invalid_argument("scenario: grid.length must be positive");
    if (!(dt > 0)) throw std::invalid_argument("scenario: integrator.dt must be positive");
    if (!(t_end > 0)) throw std::invalid_argument("scenario: integrator.t_end must be positive");
    if (mu < 0) throw std::invalid_argument("scenario: control.mu must be >= 0");
    if (t_on < 0) throw std::invalid_argument("scenario: control.t_on must be >= 0");
    if (n_actuators < 1) throw std::invalid_argument("scenario: control.n_actuators must be >= 1");
    if (snapshot_stride < 1)
        throw std::invalid_argument("scenario: outputs.snapshot_stride must be >= 1");
    if (twin_enabled && model != ModelId::kse)
        throw std::invalid_argument("scenario: twin experiments are defined for the kse model");
}

Grid1D Scenario::make_grid() const {
    switch (model) {
        case ModelId::chafee_infante: return Grid1D::neumann(grid_length, grid_n);
        case ModelId::kse: return Grid1D::periodic(grid_length, grid_n);
        case ModelId::catalytic_rod: return Grid1D::dirichlet(grid_length, grid_n);
    }
    throw std::logic_error("scenario: unknown model");
}

namespace {

struct IcTerm {
    double coef = 1.0;
    int kind = 0;  // 0 constant, 1 cos, 2 sin
    double k = 0.0;
};

// Tiny expression grammar: sum of `c`, `c*cos(k*x)`, `c*sin(k*x)` terms
// (also accepts `cos(kx)`, `sin(x)`, bare signs).
std::vector<IcTerm> parse_ic_expression(const std::string& expr) {
    std::vector<IcTerm> terms;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
    };
    skip_ws();
    while (i < expr.size()) {
        double sign = 1.0;
        while (i < expr.size() && (expr[i] == '+' || expr[i] == '-')) {
            if (expr[i] == '-') sign = -sign;
            ++i;
            skip_ws();
        }
        if (i >= expr.size()) break;
        const std::size_t term_start = i;
        IcTerm term;
        term.coef = sign;
        // optional numeric coefficient
        if (std::isdigit(static_cast<unsigned char>(expr[i])) || expr[i] == '.') {
            std::size_t used = 0;
            term.coef = sign * std::stod(expr.substr(i), &used);
            i += used;
            skip_ws();
            if (i < expr.size() && expr[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        if (i < expr.size() && (expr.compare(i, 4, "cos(") == 0 || expr.compare(i, 4, "sin(") == 0)) {
            term.kind = expr[i] == 'c' ? 1 : 2;
            i += 4;
            std::size_t close = expr.find(')', i);
            if (close == std::string::npos)
                throw std::invalid_argument("ic.expression: missing ')' in '" + expr + "'");
            std::string inner = trim(expr.substr(i, close - i));
            i = close + 1;
            // inner forms: x | k*x | kx
            std::size_t xpos = inner.find('x');
            if (xpos == std::string::npos)
                throw std::invalid_argument("ic.expression: expected argument in x, got '" + inner +
                                            "'");
            std::string kpart = trim(inner.substr(0, xpos));
            if (!kpart.empty() && kpart.back() == '*') kpart = trim(kpart.substr(0, kpart.size() - 1));
            term.k = kpart.empty() ? 1.0 : parse_double(kpart, "ic.expression");
            if (trim(inner.substr(xpos + 1)) != "")
                throw std::invalid_argument("ic.expression: unsupported argument '" + inner + "'");
        }
        if (i == term_start)
            throw std::invalid_argument("ic.expression: unsupported term at '" + expr.substr(i) +
                                        "'");
        terms.push_back(term);
        skip_ws();
    }
    if (terms.empty()) throw std::invalid_argument("ic.expression: empty expression");
    return terms;
}

double eval_ic_terms(const std::vector<IcTerm>& terms, double x) {
    double v = 0.0;
    for (const auto& t : terms) {
        switch (t.kind) {
            case 0: v += t.coef; break;
            case 1: v += t.coef * std::cos(t.k * x); break;
            case 2: v += t.coef * std::sin(t.k * x); break;
        }
    }
    return v;
}

}  // namespace

Field Scenario::initial_condition(const Grid1D& g) const {
    if (!ic_expression.empty()) {
        auto terms = parse_ic_expression(ic_expression);
        double amp = std::isnan(ic_amplitude) ? 1.0 : ic_amplitude;
        return Field::from_function(g, [&](double x) { return amp * eval_ic_terms(terms, x); });
    }

    double amp = ic_amplitude;
    auto def = [&](double v) { return std::isnan(amp) ? v : amp; };
    if (ic_preset == "zero") return Field(g, 0.0);
    if (ic_preset == "ci_cos3") {
        double a = def(1.0);
        return Field::from_function(g, [a](double x) { return a * std::cos(3.0 * x); });
    }
    if (ic_preset == "kse_small" || ic_preset == "kse_cos") {
        double a = def(ic_preset == "kse_small" ? 1e-10 : 1.0);
        return Field::from_function(
            g, [a](double x) { return a * std::cos(x) * (1.0 + std::sin(x)); });
    }
    if (ic_preset == "kse_multi") {
        double a = def(2.5 / std::sqrt(5.0));
        return Field::from_function(g, [a](double x) {
            double v = 0.0;
            for (int n = 1; n <= 5; ++n)
                v += std::sin(n * x - n * kPi) + std::cos(n * x - n * kPi);
            return a * v;
        });
    }
    if (ic_preset == "rod_sin2") {
        double a = def(1e-3);
        return Field::from_function(g, [a](double x) { return a * std::sin(2.0 * x); });
    }
    throw std::invalid_argument("scenario: unknown ic.preset '" + ic_preset + "'");
}

InterpolantSpec Scenario::interpolant_spec() const {
    InterpolantSpec spec;
    switch (family) {
        case ControlFamily::none:
        case ControlFamily::finite_volume: spec.family = InterpolantFamily::finite_volume; break;
        case ControlFamily::fourier_modes: spec.family = InterpolantFamily::fourier_modes; break;
        case ControlFamily::nodal: spec.family = InterpolantFamily::nodal; break;
    }
    spec.n_actuators = n_actuators;
    spec.mean_zero = mean_zero;
    spec.node_rule = node_rule;
    if (c_est > 0.0) spec.c_est = c_est;
    return spec;
}

// ---- key-value table --------------------------------------------------------

namespace {

const char* family_key(ControlFamily f) {
    switch (f) {
        case ControlFamily::none: return "none";
        case ControlFamily::fourier_modes: return "fourier_modes";
        case ControlFamily::finite_volume: return "finite_volume";
        case ControlFamily::nodal: return "nodal";
    }
    return "?";
}

ControlFamily parse_family(const std::string& v) {
    if (v == "none") return ControlFamily::none;
    if (v == "fourier_modes") return ControlFamily::fourier_modes;
    if (v == "finite_volume") return ControlFamily::finite_volume;
    if (v == "nodal") return ControlFamily::nodal;
    throw std::invalid_argument("control.family must be none|fourier_modes|finite_volume|nodal");
}

ModelId parse_model(const std::string& v) {
    if (v == "ci") return ModelId::chafee_infante;
    if (v == "kse") return ModelId::kse;
    if (v == "rod") return ModelId::catalytic_rod;
    throw std::invalid_argument("model must be ci|kse|rod");
}

const char* node_rule_key(NodeRule r) {
    switch (r) {
        case NodeRule::midpoint: return "midpoint";
        case NodeRule::left: return "left";
        case NodeRule::custom: return "custom";
    }
    return "?";
}

NodeRule parse_node_rule(const std::string& v) {
    if (v == "midpoint") return NodeRule::midpoint;
    if (v == "left") return NodeRule::left;
    if (v == "custom") return NodeRule::custom;
    throw std::invalid_argument("control.node_rule must be midpoint|left|custom");
}

}  // namespace

std::string config_get(const Scenario& s, const std::string& key) {
    if (key == "name") return s.name;
    if (key == "model") return model_name(s.model);
    if (key == "grid.n") return std::to_string(s.grid_n);
    if (key == "grid.length") return format_double(s.grid_length);
    if (key == "params.nu") return format_double(s.nu);
    if (key == "params.alpha") return format_double(s.alpha);
    if (key == "params.gamma") return format_double(s.gamma);
    if (key == "params.beta_t") return format_double(s.beta_t);
    if (key == "params.beta_u") return format_double(s.beta_u);
    if (key == "params.gamma_act") return format_double(s.gamma_act);
    if (key == "params.uncertainty_amp") return format_double(s.uncertainty_amp);
    if (key == "params.uncertainty_omega") return format_double(s.uncertainty_omega);
    if (key == "integrator.dt") return format_double(s.dt);
    if (key == "integrator.t_end") return format_double(s.t_end);
    if (key == "control.family") return family_key(s.family);
    if (key == "control.n_actuators") return std::to_string(s.n_actuators);
    if (key == "control.mu") return format_double(s.mu);
    if (key == "control.t_on") return format_double(s.t_on);
    if (key == "control.mean_zero") return s.mean_zero ? "true" : "false";
    if (key == "control.node_rule") return node_rule_key(s.node_rule);
    if (key == "control.fold_symbol") return s.fold_symbol ? "true" : "false";
    if (key == "control.c_est") return format_double(s.c_est);
    if (key == "ic.preset") return s.ic_preset;
    if (key == "ic.amplitude")
        return std::isnan(s.ic_amplitude) ? "default" : format_double(s.ic_amplitude);
    if (key == "ic.expression") return s.ic_expression;
    if (key == "outputs.snapshot_stride") return std::to_string(s.snapshot_stride);
    if (key == "seed") return std::to_string(s.seed);
    if (key == "twin.enabled") return s.twin_enabled ? "true" : "false";
    if (key == "twin.spinup") return format_double(s.twin_spinup);
    if (key == "twin.truth_ic") return s.twin_truth_ic;
    throw std::invalid_argument("unknown config key '" + key + "'");
}

namespace {

bool set_exact(Scenario& s, const std::string& key, const std::string& value) {
    if (key == "name") s.name = value;
    else if (key == "model") s.model = parse_model(value);
    else if (key == "grid.n") s.grid_n = parse_int(value, key);
    else if (key == "grid.length") s.grid_length = parse_double(value, key);
    else if (key == "params.nu") s.nu = parse_double(value, key);
    else if (key == "params.alpha") s.alpha = parse_double(value, key);
    else if (key == "params.gamma") s.gamma = parse_double(value, key);
    else if (key == "params.beta_t") s.beta_t = parse_double(value, key);
    else if (key == "params.beta_u") s.beta_u = parse_double(value, key);
    else if (key == "params.gamma_act") s.gamma_act = parse_double(value, key);
    else if (key == "params.uncertainty_amp") s.uncertainty_amp = parse_double(value, key);
    else if (key == "params.uncertainty_omega") s.uncertainty_omega = parse_double(value, key);
    else if (key == "integrator.dt") s.dt = parse_double(value, key);
    else if (key == "integrator.t_end") s.t_end = parse_double(value, key);
    else if (key == "control.family") s.family = parse_family(value);
    else if (key == "control.n_actuators") s.n_actuators = parse_int(value, key);
    else if (key == "control.mu") s.mu = parse_double(value, key);
    else if (key == "control.t_on") s.t_on = parse_double(value, key);
    else if (key == "control.mean_zero") s.mean_zero = parse_bool(value, key);
    else if (key == "control.node_rule") s.node_rule = parse_node_rule(value);
    else if (key == "control.fold_symbol") s.fold_symbol = parse_bool(value, key);
    else if (key == "control.c_est") s.c_est = parse_double(value, key);
    else if (key == "ic.preset") s.ic_preset = value;
    else if (key == "ic.amplitude")
        s.ic_amplitude = value == "default" ? std::numeric_limits<double>::quiet_NaN()
                                            : parse_double(value, key);
    else if (key == "ic.expression") s.ic_expression = value;
    else if (key == "outputs.snapshot_stride") s.snapshot_stride = parse_int(value, key);
    else if (key == "seed") s.seed = static_cast<std::uint64_t>(parse_double(value, key));
    else if (key == "twin.enabled") s.twin_enabled = parse_bool(value, key);
    else if (key == "twin.spinup") s.twin_spinup = parse_double(value, key);
    else if (key == "twin.truth_ic") s.twin_truth_ic = value;
    else return false;
    return true;
}

}  // namespace

void config_set(Scenario& s, const std::string& key, const std::string& value) {
    if (set_exact(s, key, value)) return;
    if (key.find('.') == std::string::npos) {
        for (const char* group : {"params.", "control.", "integrator.", "grid.", "ic.", "outputs."}) {
            if (set_exact(s, group + key, value)) return;
        }
    }
    throw std::invalid_argument("unknown config key '" + key + "'");
}

std::string serialize_config(const Scenario& s) {
    std::ostringstream os;
    auto emit = [&](const char* key) { os << key << " = " << config_get(s, key) << "\n"; };
    emit("name");
    emit("model");
    emit("grid.n");
    emit("grid.length");
    switch (s.model) {
        case ModelId::chafee_infante:
            emit("params.nu");
            emit("params.alpha");
            break;
        case ModelId::kse:
            emit("params.nu");
            emit("params.gamma");
            break;
        case ModelId::catalytic_rod:
            emit("params.beta_t");
            emit("params.beta_u");
            emit("params.gamma_act");
            emit("params.uncertainty_amp");
            emit("params.uncertainty_omega");
            break;
    }
    emit("integrator.dt");
    emit("integrator.t_end");
    emit("control.family");
    if (s.family != ControlFamily::none) {
        emit("control.n_actuators");
        emit("control.mu");
        emit("control.t_on");
        emit("control.mean_zero");
        if (s.family == ControlFamily::nodal) emit("control.node_rule");
        if (s.family == ControlFamily::fourier_modes) emit("control.fold_symbol");
        if (s.c_est > 0.0) emit("control.c_est");
    }
    emit("ic.preset");
    emit("ic.amplitude");
    if (!s.ic_expression.empty()) emit("ic.expression");
    emit("outputs.snapshot_stride");
    emit("seed");
    if (s.twin_enabled) {
        emit("twin.enabled");
        emit("twin.spinup");
        emit("twin.truth_ic");
    }
    return os.str();
}

Scenario parse_config(const std::string& text) {
    Scenario s;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string body = line;
        std::size_t hash = body.find('#');
        if (hash != std::string::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;
        std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value', got '" + trim(line) + "'");
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        try {
            config_set(s, key, value);
        } catch (const std::exception& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return s;
}

// ---- presets ----------------------------------------------------------------

namespace {

Scenario base_ci() {
    Scenario s;
    s.model = ModelId::chafee_infante;
    s.grid_n = 101;
    s.grid_length = 1.0;
    s.nu = 1.0;
    s.alpha = 100.0;
    s.dt = 4e-5;  // 0.4 dx^2 / nu
    s.t_end = 1.0;
    s.ic_preset = "ci_cos3";
    s.snapshot_stride = 250;
    return s;
}

Scenario base_kse() {
    Scenario s;
    s.model = ModelId::kse;
    s.grid_n = 128;
    s.grid_length = kTwoPi;
    s.gamma = 1.0;
    s.dt = 0.25;
    s.ic_preset = "kse_small";
    s.snapshot_stride = 4;
    return s;
}

Scenario base_rod() {
    Scenario s;
    s.model = ModelId::catalytic_rod;
    s.grid_n = 21;  // dx = pi/20
    s.grid_length = kPi;
    s.beta_t = 50.0;
    s.beta_u = 2.0;
    s.gamma_act = 4.0;
    s.dt = 0.006;  // 6/1000
    s.t_end = 6.0;
    s.ic_preset = "rod_sin2";
    s.snapshot_stride = 10;
    return s;
}

std::map<std::string, Scenario> build_presets() {
    std::map<std::string, Scenario> m;

    {
        Scenario s = base_ci();
        s.name = "fig1";  // uncontrolled Chafee-Infante, saturation at sqrt(alpha)
        m[s.name] = s;
    }
    {
        Scenario s = base_ci();
        s.name = "fig2";  // finite-volume control, NC=10, mu=300, on from t=0
        s.t_end = 0.1;
        s.family = ControlFamily::finite_volume;
        s.n_actuators = 10;
        s.mu = 300.0;
        s.t_on = 0.0;
        s.snapshot_stride = 50;
        m[s.name] = s;
    }
    {
        Scenario s = base_kse();
        s.name = "fig3";  // nu > 1: zero state is stable
        s.nu = 1.1;
        s.t_end = 200.0;
        m[s.name] = s;
    }
    {
        Scenario s = base_kse();
        s.name = "fig4";  // nu = 4/15: pattern develops around t = 32
        s.nu = 4.0 / 15.0;
        s.t_end = 80.0;
        m[s.name] = s;
    }
    {
        Scenario s = base_kse();
        s.name = "fig5";  // Fourier-mode control switched on at t = 40
        s.nu = 4.0 / 15.0;
        s.dt = 0.1;
        s.t_end = 60.0;
        s.family = ControlFamily::fourier_modes;
        s.n_actuators = 4;
        s.mu = 20.0;
        s.t_on = 40.0;
        s.mean_zero = true;
        s.ic_preset = "kse_cos";
        m[s.name] = s;
    }
    {
        Scenario s = base_kse();
        s.name = "fig6";  // finite-volume control from t = 0
        s.nu = 4.0 / 20.0;
        s.dt = 0.1;
        s.t_end = 30.0;
        s.family = ControlFamily::finite_volume;
        s.n_actuators = 4;
        s.mu = 20.0;
        s.t_on = 0.0;
        s.mean_zero = true;
        s.ic_preset = "kse_multi";
        m[s.name] = s;
    }
    {
        Scenario s = base_kse();
        s.name = "fig7";  // nodal control switched on at t = 40
        s.nu = 4.0 / 20.0;
        s.dt = 0.1;
        s.t_end = 60.0;
        s.family = ControlFamily::nodal;
        s.n_actuators = 4;
        s.mu = 20.0;
        s.t_on = 40.0;
        s.mean_zero = true;
        s.ic_preset = "kse_small";
        m[s.name] = s;
    }
    {
        Scenario s = base_rod();
        s.name = "fig8";  // uncontrolled rod over the paper's [0, 6] window
        m[s.name] = s;
    }
    {
        Scenario s = base_rod();
        s.name = "fig9";  // single finite-volume actuator, mu = 30
        s.family = ControlFamily::finite_volume;
        s.n_actuators = 1;
        s.mu = 30.0;
        s.t_on = 0.0;
        m[s.name] = s;
    }
    {
        Scenario s = base_rod();
        s.name = "fig10";  // time-varying heat of reaction, tiny initial data
        s.family = ControlFamily::finite_volume;
        s.n_actuators = 1;
        s.mu = 30.0;
        s.t_on = 0.0;
        s.uncertainty_amp = 1.0;
        s.uncertainty_omega = 0.524;
        s.ic_amplitude = 1e-10;
        m[s.name] = s;
    }
    {
        Scenario s = base_rod();
        s.name = "fig9_nodal";  // sensor and actuator at the rod midpoint
        s.family = ControlFamily::nodal;
        s.n_actuators = 1;
        s.mu = 30.0;
        s.t_on = 0.0;
        m[s.name] = s;
    }
    {
        Scenario s = base_kse();
        s.name = "attractor";  // long uncontrolled run for R2 estimation
        s.nu = 4.0 / 15.0;
        s.ic_preset = "kse_cos";
        s.t_end = 500.0;
        m[s.name] = s;
    }
    {
        Scenario s = base_kse();
        s.name = "twin";  // nudge a cold start toward a reference attractor orbit
        s.nu = 4.0 / 15.0;
        s.dt = 0.05;
        s.t_end = 30.0;
        s.family = ControlFamily::finite_volume;
        s.n_actuators = 32;
        s.mu = 40.0;
        s.t_on = 0.0;
        s.mean_zero = true;
        s.ic_preset = "kse_multi";
        s.twin_enabled = true;
        s.twin_spinup = 100.0;
        s.twin_truth_ic = "kse_cos";
        s.snapshot_stride = 1;
        m[s.name] = s;
    }
    return m;
}

const std::map<std::string, Scenario>& presets() {
    static const std::map<std::string, Scenario> m = build_presets();
    return m;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : presets()) names.push_back(name);
    return names;
}

Scenario preset_scenario(const std::string& name) {
    auto it = presets().find(name);
    if (it == presets().end()) {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw std::invalid_argument("unknown scenario '" + name + "' (available: " + known + ")");
    }
    return it->second;
}

// ---- run engine ---------------------------------------------------------------

RunSummary summarize(const Trajectory& traj, const Scenario& s) {
    RunSummary out;
    const auto& d = traj.diagnostics;
    if (d.size() == 0) return out;

    out.final_l2 = d.l2.back();
    out.final_max_abs = d.max_abs.back();
    out.peak_max_abs = *std::max_element(d.max_abs.begin(), d.max_abs.end());
    for (double m : d.mean) out.max_abs_mean = std::max(out.max_abs_mean, std::abs(m));
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.max_abs[i] > 0.5) {
            out.onset_time = d.t[i];
            break;
        }
    }
    out.blowup = traj.blowup;
    out.blowup_time = traj.blowup_time;
    out.max_imag_ratio = traj.max_imag_ratio;

    const double fit_from = (s.family != ControlFamily::none && s.mu > 0.0) ? s.t_on : 0.0;
    try {
        // truncate the fit where the series reaches its floor (the conserved
        // roundoff-level mean keeps the l2 norm from decaying to zero)
        double fit_to = d.t.back();
        double v0 = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d.t[i] < fit_from) continue;
            if (v0 == 0.0) v0 = d.l2[i];
            if (v0 > 0.0 && d.l2[i] < 1e-12 * v0) {
                fit_to = d.t[i];
                break;
            }
        }
        DecayFit fit = fit_decay_rate(d.t, d.l2, fit_from, fit_to);
        out.has_decay_fit = true;
        out.decay_rate = fit.rate;
        out.decay_r_squared = fit.r_squared;
        out.fit_t_first = fit.t_first;
        out.fit_t_last = fit.t_last;
    } catch (const std::exception&) {
        out.has_decay_fit = false;
    }

    if (!d.sync_l2.empty()) {
        out.has_sync = true;
        out.sync_final_l2 = d.sync_l2.back();
        out.sync_final_h1_semi = d.sync_h1_semi.back();
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d.t[i] >= s.t_on && d.sync_l2[i] < 1e-6) {
                out.sync_time_below_1e6 = d.t[i];
                break;
            }
        }
    }
    return out;
}

namespace {

ControlConfig make_control(const Scenario& s) {
    ControlConfig cfg;
    cfg.mu = (s.family == ControlFamily::none) ? 0.0 : s.mu;
    cfg.spec = s.interpolant_spec();
    cfg.t_on = s.t_on;
    cfg.fold_into_symbol = s.fold_symbol && s.family == ControlFamily::fourier_modes;
    return cfg;
}

RunResult run_plain(const Scenario& s, std::shared_ptr<const Trajectory> reference) {
    Grid1D grid = s.make_grid();
    Field u0 = s.initial_condition(grid);
    ControlConfig control = make_control(s);
    control.reference = std::move(reference);

    Schedule schedule;
    schedule.dt = s.dt;
    schedule.t_end = s.t_end;
    schedule.snapshot_stride = s.snapshot_stride;

    RunResult result;
    result.grid = grid;
    switch (s.model) {
        case ModelId::chafee_infante: {
            ChafeeInfanteParams p{s.nu, s.alpha, s.grid_length};
            result.trajectory = run_ci(p, u0, control, schedule);
            break;
        }
        case ModelId::kse: {
            KseParams p;
            p.nu = s.nu;
            p.gamma = s.gamma;
            p.length = s.grid_length;
            result.trajectory = run_kse(p, u0, control, schedule);
            break;
        }
        case ModelId::catalytic_rod: {
            CatalyticRodParams p;
            p.beta_t = s.beta_t;
            p.beta_u = s.beta_u;
            p.gamma_act = s.gamma_act;
            p.length = s.grid_length;
            if (s.uncertainty_amp != 0.0) {
                double amp = s.uncertainty_amp, omega = s.uncertainty_omega;
                p.uncertainty = [amp, omega](double t) { return amp * std::sin(omega * t); };
            }
            result.trajectory = run_rod(p, u0, control, schedule);
            break;
        }
    }
    result.summary = summarize(result.trajectory, s);
    return result;
}

}  // namespace

RunResult run_scenario_with_reference(const Scenario& s,
                                      std::shared_ptr<const Trajectory> reference) {
    s.validate();
    if (s.model != ModelId::kse)
        throw std::invalid_argument("run_scenario_with_reference: kse only");
    return run_plain(s, std::move(reference));
}

RunResult run_scenario(const Scenario& s) {
    s.validate();
    if (!s.twin_enabled) return run_plain(s, nullptr);

    // Twin experiment: spin the truth onto the attractor, then advance truth
    // and nudged copy together so the feedback sees the truth stage-for-stage.
    Scenario spinup = s;
    spinup.twin_enabled = false;
    spinup.family = ControlFamily::none;
    spinup.mu = 0.0;
    spinup.ic_preset = s.twin_truth_ic;
    spinup.ic_expression.clear();
    spinup.ic_amplitude = std::numeric_limits<double>::quiet_NaN();
    spinup.t_end = s.twin_spinup;
    spinup.snapshot_stride = 1 << 20;  // only the endpoint is needed
    RunResult truth_spin = run_plain(spinup, nullptr);
    if (truth_spin.trajectory.blowup)
        throw std::runtime_error("twin experiment: truth spin-up blew up");

    Grid1D grid = s.make_grid();
    Field truth_state = truth_spin.trajectory.final_state();
    Field nudged0 = s.initial_condition(grid);
    ControlConfig control = make_control(s);
    Schedule schedule;
    schedule.dt = s.dt;
    schedule.t_end = s.t_end;
    schedule.snapshot_stride = s.snapshot_stride;
    KseParams p;
    p.nu = s.nu;
    p.gamma = s.gamma;
    p.length = s.grid_length;

    TwinRun twin = run_kse_twin(p, truth_state, nudged0, control, schedule);
    RunResult result;
    result.grid = grid;
    result.trajectory = std::move(twin.nudged);
    result.summary = summarize(result.trajectory, s);
    return result;
}

}  // namespace nudgectl
