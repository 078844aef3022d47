#include "control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nudgectl {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ControlConfig::validate() const {
    if (mu < 0.0) throw std::invalid_argument("ControlConfig: mu must be >= 0");
    if (t_on < 0.0) throw std::invalid_argument("ControlConfig: t_on must be >= 0");
    if (reference && reference_steady)
        throw std::invalid_argument("ControlConfig: choose one of trajectory or steady reference");
    if (fold_into_symbol && spec.family != InterpolantFamily::fourier_modes)
        throw std::invalid_argument("ControlConfig: only the fourier_modes family can be folded");
}

Field reference_state(const Trajectory& traj, double t) {
    if (traj.times.empty()) throw std::runtime_error("reference_state: empty trajectory");
    const auto& times = traj.times;
    const double eps = 1e-9 * std::max(1.0, std::abs(times.back()));
    if (t < times.front() - eps || t > times.back() + eps)
        throw std::runtime_error("reference_state: t=" + std::to_string(t) +
                                 " outside stored range [" + std::to_string(times.front()) + ", " +
                                 std::to_string(times.back()) + "]");
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t hi = std::min<std::size_t>(it - times.begin(), times.size() - 1);
    std::size_t lo = hi > 0 ? hi - 1 : 0;
    if (hi == lo || t <= times[lo]) return traj.snapshots[lo];
    double w = (t - times[lo]) / (times[hi] - times[lo]);
    w = std::clamp(w, 0.0, 1.0);
    Field out = traj.snapshots[lo];
    for (int i = 0; i < out.size(); ++i)
        out.values[i] = (1.0 - w) * traj.snapshots[lo].values[i] + w * traj.snapshots[hi].values[i];
    return out;
}

Field feedback_term(const Field& u, const ControlConfig& cfg, double t) {
    cfg.validate();
    if (!cfg.enabled() || t < cfg.t_on) return Field(u.grid, 0.0);

    Field observed = apply_interpolant(u, cfg.spec);
    if (cfg.reference || cfg.reference_steady) {
        Field ref = cfg.reference ? reference_state(*cfg.reference, t) : *cfg.reference_steady;
        if (!(ref.grid == u.grid)) throw std::runtime_error("feedback_term: reference grid mismatch");
        Field ref_observed = apply_interpolant(ref, cfg.spec);
        for (int i = 0; i < observed.size(); ++i) observed.values[i] -= ref_observed.values[i];
    }
    for (auto& v : observed.values) v *= -cfg.mu;
    return observed;
}

namespace {

SubCondition make_term(std::string name, double lhs, bool strict, double rhs) {
    SubCondition s;
    s.name = std::move(name);
    s.lhs = lhs;
    s.strict = strict;
    s.rhs = rhs;
    s.margin = lhs - rhs;
    s.ok = strict ? (lhs > rhs) : (lhs >= rhs);
    return s;
}

ConditionVerdict finish(ConditionVerdict v) {
    v.satisfied = std::all_of(v.terms.begin(), v.terms.end(),
                              [](const SubCondition& s) { return s.ok; });
    return v;
}

}  // namespace

std::string ConditionVerdict::format() const {
    std::ostringstream os;
    os << (satisfied ? "SATISFIED" : "NOT SATISFIED") << "\n";
    for (const auto& s : terms) {
        os << "  " << (s.ok ? "[ok]  " : "[FAIL]") << " " << s.name << ": " << s.lhs
           << (s.strict ? " > " : " >= ") << s.rhs << "  (margin " << s.margin << ")\n";
    }
    if (!commentary.empty()) os << "  " << commentary << "\n";
    return os.str();
}

ConditionVerdict check_ci_condition(double nu, double alpha, double length, int n_actuators,
                                    double mu) {
    if (!(nu > 0) || !(alpha > 0) || !(length > 0) || n_actuators < 1)
        throw std::invalid_argument("check_ci_condition: inputs must be positive");
    const double h = length / n_actuators;
    const double threshold = nu * (2.0 * kPi / h) * (2.0 * kPi / h);
    ConditionVerdict v;
    v.terms.push_back(make_term("mu >= nu (2 pi / h)^2", mu, false, threshold));
    v.terms.push_back(make_term("nu (2 pi / h)^2 > alpha", threshold, true, alpha));
    std::ostringstream os;
    os << "h = " << h << ", nu (2 pi / h)^2 = " << threshold
       << "; sufficient condition only (stabilization is often observed for much smaller mu)";
    v.commentary = os.str();
    return finish(v);
}

ConditionVerdict check_kse_zero_condition(double nu, double mu, double h, double c) {
    if (!(nu > 0) || !(h > 0))
        throw std::invalid_argument("check_kse_zero_condition: nu and h must be positive");
    if (!(c > 0))
        throw std::invalid_argument(
            "check_kse_zero_condition: missing interpolation constant c; run "
            "estimate_interpolation_constant first or supply one");
    ConditionVerdict v;
    v.terms.push_back(make_term("mu > 4/nu", mu, true, 4.0 / nu));
    v.terms.push_back(make_term("nu > mu c h^4", nu, true, mu * c * h * h * h * h));
    return finish(v);
}

ConditionVerdict check_kse_reference_condition(double nu, double mu, double h, double c, double r2,
                                               double length) {
    if (r2 < 0)
        throw std::invalid_argument("check_kse_reference_condition: R2 must be >= 0");
    if (!(length > 0))
        throw std::invalid_argument("check_kse_reference_condition: length must be positive");
    ConditionVerdict v = check_kse_zero_condition(nu, mu, h, c);
    // the reference form relaxes the second inequality to non-strict
    v.terms[1] = [&] {
        SubCondition s = v.terms[1];
        s.name = "nu >= mu c h^4";
        s.strict = false;
        s.ok = s.lhs >= s.rhs;
        return s;
    }();
    v.terms.push_back(
        make_term("mu/8 >= sqrt(L/(2 pi)) R2", mu / 8.0, false, std::sqrt(length / (2.0 * kPi)) * r2));
    return finish(v);
}

ActuatorRecommendation recommended_actuators(const ChafeeInfanteParams& p) {
    p.validate();
    ActuatorRecommendation r;
    r.unstable_modes = count_unstable_modes(p);
    r.primary_bound = std::sqrt(p.alpha * p.length * p.length / (kPi * kPi * p.nu));
    r.remark_bound = std::sqrt(p.alpha * p.length * p.length / (4.0 * kPi * kPi * p.nu));
    r.recommended = std::max(static_cast<int>(std::ceil(r.primary_bound)), r.unstable_modes);
    return r;
}

ActuatorRecommendation recommended_actuators(const KseParams& p) {
    p.validate();
    ActuatorRecommendation r;
    r.unstable_modes = count_unstable_modes(p);
    r.primary_bound = 1.0 / std::sqrt(p.nu);
    r.remark_bound = r.primary_bound;
    r.recommended = std::max(static_cast<int>(std::ceil(r.primary_bound)), r.unstable_modes);
    return r;
}

ActuatorRecommendation recommended_actuators(const CatalyticRodParams& p) {
    p.validate();
    ActuatorRecommendation r;
    r.unstable_modes = count_unstable_modes(p);
    r.primary_bound = r.unstable_modes;
    r.remark_bound = r.unstable_modes;
    r.recommended = std::max(1, r.unstable_modes);
    return r;
}

}  // namespace nudgectl
