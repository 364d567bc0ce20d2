#include "tns/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace tns {

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, std::size_t sample_index) {
    char name[32];
    std::snprintf(name, sizeof(name), "checkpoint_%06zu.bin", sample_index);
    return dir / name;
}

FieldProvider directory_field_provider(const std::filesystem::path& dir, const Trajectory& traj) {
    std::vector<double> times;
    times.reserve(traj.size());
    for (const TrajectorySample& s : traj)
        times.push_back(s.t);
    return [dir, times = std::move(times)](std::size_t index) -> std::optional<SpectralField> {
        const auto path = checkpoint_path(dir, index);
        std::error_code ec;
        if (!std::filesystem::exists(path, ec))
            return std::nullopt;
        Checkpoint ck = read_checkpoint(path);
        if (index < times.size()) {
            const double t = times[index];
            if (std::abs(ck.t - t) > 1e-9 * std::max(1.0, std::abs(t)))
                return std::nullopt;
        }
        return std::move(ck.field);
    };
}

ExperimentResult run_experiment(const SolverConfig& cfg) {
    ExperimentResult result;
    const std::filesystem::path out_dir(cfg.output.directory);
    std::filesystem::create_directories(out_dir);

    const SpectralField u0 = make_initial_condition(cfg.resolution, cfg.ic);

    std::size_t sample_index = 0;
    const int every = cfg.output.checkpoint_every_sample;
    const SampleSink sink = [&](const TrajectorySample& sample, const SpectralField& field) {
        if (every > 0 && sample_index % static_cast<std::size_t>(every) == 0)
            write_checkpoint(checkpoint_path(out_dir, sample_index), field, cfg.nu, sample.t);
        ++sample_index;
    };

    result.run = run(u0, run_settings(cfg), cfg.monitor, sink);

    result.trajectory_path = out_dir / "trajectory.csv";
    write_trajectory_csv(result.trajectory_path, result.run.samples);

    const FieldProvider provider = directory_field_provider(out_dir, result.run.samples);
    result.report = verify_trajectory(result.run.samples, provider, cfg.monitor, cfg.nu);
    result.report.constants_used.seed = cfg.ic.seed;

    result.report_path = out_dir / "report.json";
    write_report_json(result.report_path, result.report);

    if (result.run.blew_up)
        result.exit_status = 3;
    else if (!result.report.notes.empty())
        result.exit_status = 4;
    else
        result.exit_status = 0;
    return result;
}

} // namespace tns
