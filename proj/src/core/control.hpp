// Feedback assembly -mu (I_h(u) - I_h(u*)), activation scheduling, actuator
// counting, and the sufficient stability conditions as checkable predicates.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "interpolants.hpp"
#include "models.hpp"
#include "trajectory.hpp"

namespace nudgectl {

struct ControlConfig {
    double mu = 0.0;
    InterpolantSpec spec;
    double t_on = 0.0;
    // Reference u* for nudging toward a nonzero solution. Either a stored
    // trajectory (looked up with linear interpolation in time) or a steady
    // field. Absent means u* = 0.
    std::shared_ptr<const Trajectory> reference;
    std::optional<Field> reference_steady;
    // Fourier-mode family only: integrate -mu exactly by subtracting mu from
    // the linear symbol on the controlled modes instead of evaluating the
    // feedback alongside the nonlinearity.
    bool fold_into_symbol = false;

    void validate() const;
    bool enabled() const { return mu > 0.0; }
};

// u* evaluated at time t from stored snapshots (nearest at or before t,
// linearly interpolated to the next one). Throws when t is not covered.
Field reference_state(const Trajectory& traj, double t);

// Zero before t_on; afterwards -mu (I_h(u) - I_h(u*(t))), mean-zero shifted
// when the spec requests it.
Field feedback_term(const Field& u, const ControlConfig& cfg, double t);

struct SubCondition {
    std::string name;
    double lhs = 0.0;
    bool strict = true;  // lhs > rhs vs lhs >= rhs
    double rhs = 0.0;
    bool ok = false;
    double margin = 0.0;  // lhs - rhs
};

struct ConditionVerdict {
    bool satisfied = false;
    std::vector<SubCondition> terms;
    std::string commentary;

    std::string format() const;
};

// mu >= nu (2 pi / h)^2 > alpha with h = L/N.
ConditionVerdict check_ci_condition(double nu, double alpha, double length, int n_actuators,
                                    double mu);

// mu > 4/nu and nu > mu c h^4 (zero reference).
ConditionVerdict check_kse_zero_condition(double nu, double mu, double h, double c);

// mu > 4/nu, nu >= mu c h^4, and mu/8 >= sqrt(L/(2 pi)) R2 (nonzero reference).
ConditionVerdict check_kse_reference_condition(double nu, double mu, double h, double c, double r2,
                                               double length);

struct ActuatorRecommendation {
    int recommended = 0;
    int unstable_modes = 0;
    double primary_bound = 0.0;  // sqrt(alpha L^2 / (pi^2 nu)) resp. 1/sqrt(nu)
    double remark_bound = 0.0;   // sqrt(alpha L^2 / (4 pi^2 nu)) variant (ci only)
};

ActuatorRecommendation recommended_actuators(const ChafeeInfanteParams& p);
ActuatorRecommendation recommended_actuators(const KseParams& p);
ActuatorRecommendation recommended_actuators(const CatalyticRodParams& p);

}  // namespace nudgectl
