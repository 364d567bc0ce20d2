#pragma once

#include <vector>

namespace tns {

/// Time-stamped diagnostics emitted along a run. All norms follow the
/// unitary lattice convention of SpectralField.
struct TrajectorySample {
    double t = 0.0;
    double energy = 0.0;       ///< ||u(t)||_{L2}^2
    double grad_sq = 0.0;      ///< ||grad u(t)||_{L2}^2
    double lap_sq = 0.0;       ///< ||lap u(t)||_{L2}^2
    double abs_sum_total = 0.0;///< sum_k |uhat(k)|
    double f_m = 0.0;          ///< spectral-mass balance at the active cutoff
    double active_m = 0.0;     ///< cutoff in force when the sample was taken
    double dissipation_integral = 0.0; ///< nu * int_0^t ||grad u||^2, trapezoid on samples
};

using Trajectory = std::vector<TrajectorySample>;

} // namespace tns
