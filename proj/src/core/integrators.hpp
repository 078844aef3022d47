// Time stepping: forward-Euler finite differences for the bounded models,
// ETDRK4 pseudo-spectral for the KSE, plus the shared simulation driver.
#pragma once

#include <functional>

#include "control.hpp"
#include "etdrk4.hpp"
#include "models.hpp"
#include "trajectory.hpp"

namespace nudgectl {

struct Schedule {
    double dt = 0.0;
    double t_end = 0.0;
    int snapshot_stride = 4;       // steps between stored full fields
    double blowup_threshold = 1e10;

    void validate() const;
    int step_count() const;
};

// Diffusion stability guard r = nu dt / dx^2 < 1/2; throws with the offending
// ratio at configuration time.
void check_cfl(double nu, double dt, double dx);

// One forward-Euler update u + dt * rhs(u, t).
Field explicit_fd_step(const Field& u, const std::function<Field(const Field&, double)>& rhs,
                       double dt, double t);

struct EtdrkOptions {
    int contour_points = 32;
    double contour_radius = 1.0;
    bool dealias = false;
};

Trajectory run_ci(const ChafeeInfanteParams& p, const Field& u0, const ControlConfig& control,
                  const Schedule& schedule);

Trajectory run_rod(const CatalyticRodParams& p, const Field& u0, const ControlConfig& control,
                   const Schedule& schedule);

Trajectory run_kse(const KseParams& p, const Field& u0, const ControlConfig& control,
                   const Schedule& schedule, const EtdrkOptions& options = {});

struct TwinRun {
    Trajectory truth;
    Trajectory nudged;  // carries the synchronization-error series
};

// Truth and nudged copy advanced together by one coupled ETDRK4 system, so
// the feedback sees the truth at the stage times themselves. Nudging against
// a stored trajectory instead (run_kse with control.reference) floors the
// synchronization error at the snapshot-interpolation level O(mu dt^2).
TwinRun run_kse_twin(const KseParams& p, const Field& truth0, const Field& nudged0,
                     const ControlConfig& control, const Schedule& schedule,
                     const EtdrkOptions& options = {});

}  // namespace nudgectl
