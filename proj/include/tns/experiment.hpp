#pragma once

#include <filesystem>

#include "tns/config.hpp"
#include "tns/integrator.hpp"
#include "tns/io.hpp"

namespace tns {

struct ExperimentResult {
    /// 0 success, 3 blow-up sentinel, 4 verification notes present.
    int exit_status = 0;
    RunResult run;
    BoundReport report;
    std::filesystem::path trajectory_path;
    std::filesystem::path report_path;
};

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, std::size_t sample_index);

/// Simulates per config, writes trajectory.csv and the checkpoints into the
/// output directory, verifies the trajectory against the saved fields, and
/// writes report.json. A blow-up preserves the partial outputs.
ExperimentResult run_experiment(const SolverConfig& cfg);

/// Field provider backed by checkpoint files in a directory; entries whose
/// stored time disagrees with the sample time count as missing.
FieldProvider directory_field_provider(const std::filesystem::path& dir, const Trajectory& traj);

} // namespace tns
