// Time-series output of a simulation: per-step norm diagnostics plus strided
// full-field snapshots.
#pragma once

#include <cmath>
#include <vector>

#include "grid.hpp"

namespace nudgectl {

struct RunDiagnostics {
    std::vector<double> t;
    std::vector<double> l2;
    std::vector<double> h1_semi;
    std::vector<double> h1;
    std::vector<double> max_abs;
    std::vector<double> mean;
    std::vector<double> uxx_l2;
    std::vector<char> control_active;
    // synchronization error against a reference trajectory (twin runs only)
    std::vector<double> sync_l2;
    std::vector<double> sync_h1_semi;

    std::size_t size() const { return t.size(); }
};

struct Trajectory {
    std::vector<double> times;      // snapshot times
    std::vector<Field> snapshots;   // strided full fields (always includes t=0 and t_end)
    int snapshot_stride = 1;
    RunDiagnostics diagnostics;
    bool blowup = false;
    double blowup_time = std::numeric_limits<double>::quiet_NaN();
    double max_imag_ratio = 0.0;    // spectral runs: worst |imag| / ||u|| seen

    const Field& final_state() const { return snapshots.back(); }
};

}  // namespace nudgectl
