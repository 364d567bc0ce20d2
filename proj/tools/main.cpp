#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tns/experiment.hpp"
#include "tns/lattice.hpp"

namespace {

constexpr int kExitConfigError = 2;

struct Overrides {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> resolution;
    std::optional<double> nu;
    std::optional<double> tend;
    std::optional<std::string> ic;
};

void apply_overrides(tns::SolverConfig& cfg, const Overrides& o) {
    if (o.out)
        cfg.output.directory = *o.out;
    if (o.seed)
        cfg.ic.seed = *o.seed;
    if (o.resolution)
        cfg.resolution = *o.resolution;
    if (o.nu)
        cfg.nu = *o.nu;
    if (o.tend)
        cfg.t_end = *o.tend;
    if (o.ic) {
        if (*o.ic == "taylor_green")
            cfg.ic.kind = tns::InitialConditionSpec::Kind::taylor_green;
        else if (*o.ic == "abc")
            cfg.ic.kind = tns::InitialConditionSpec::Kind::abc;
        else if (*o.ic == "random_band")
            cfg.ic.kind = tns::InitialConditionSpec::Kind::random_band;
        else
            throw tns::ConfigError("unknown --ic '" + *o.ic + "'");
    }
}

int cmd_run(const std::string& config_path, const Overrides& overrides) {
    tns::SolverConfig cfg = tns::load_config(config_path);
    apply_overrides(cfg, overrides);

    const tns::ExperimentResult result = tns::run_experiment(cfg);
    std::cout << "run: " << result.run.samples.size() << " samples, trajectory -> "
              << result.trajectory_path.string() << ", report -> " << result.report_path.string() << "\n";
    std::cout << "run: energy residual " << result.report.energy_inequality_residual << ", "
              << result.report.intervals.size() << " interval(s), " << result.report.notes.size() << " note(s)\n";
    if (result.run.blew_up)
        std::cout << "run: blow-up sentinel at t = " << result.run.blowup_time << ", k = "
                  << tns::to_string(result.run.blowup_wavevector) << "\n";
    return result.exit_status;
}

int cmd_verify(const std::string& trajectory_path, const std::string& checkpoint_dir,
               const std::optional<std::string>& config_path, const std::optional<std::string>& out_dir) {
    namespace fs = std::filesystem;
    if (!fs::exists(trajectory_path)) {
        std::cerr << "verify: trajectory file '" << trajectory_path << "' not found\n";
        return kExitConfigError;
    }
    if (!fs::is_directory(checkpoint_dir)) {
        std::cerr << "verify: checkpoint directory '" << checkpoint_dir << "' not found\n";
        return kExitConfigError;
    }

    const tns::Trajectory traj = tns::read_trajectory_csv(trajectory_path);
    if (traj.empty()) {
        std::cerr << "verify: trajectory has no samples\n";
        return kExitConfigError;
    }

    tns::MonitorConfig monitor;
    std::uint64_t seed = 0;
    std::optional<double> nu;
    if (config_path) {
        const tns::SolverConfig cfg = tns::load_config(*config_path);
        monitor = cfg.monitor;
        seed = cfg.ic.seed;
        nu = cfg.nu;
    }
    if (!nu) {
        // nu travels inside every checkpoint header.
        for (std::size_t i = 0; i < traj.size() && !nu; ++i) {
            const auto path = tns::checkpoint_path(checkpoint_dir, i);
            if (fs::exists(path))
                nu = tns::read_checkpoint(path).nu;
        }
    }
    if (!nu) {
        std::cerr << "verify: no checkpoint found and no --config given; cannot determine nu\n";
        return kExitConfigError;
    }

    const tns::FieldProvider provider = tns::directory_field_provider(checkpoint_dir, traj);
    tns::BoundReport report = tns::verify_trajectory(traj, provider, monitor, *nu);
    report.constants_used.seed = seed;

    const fs::path report_path = fs::path(out_dir.value_or(fs::path(trajectory_path).parent_path().string())) /
                                 "report.json";
    tns::write_report_json(report_path, report);
    std::cout << "verify: report -> " << report_path.string() << " (" << report.intervals.size() << " interval(s), "
              << report.notes.size() << " note(s), " << report.chain_check_failures << " chain failure(s))\n";
    return report.notes.empty() ? 0 : 4;
}

int cmd_lattice(double m_max) {
    if (!(m_max >= 1.0)) {
        std::cerr << "lattice: m_max must be >= 1\n";
        return kExitConfigError;
    }
    std::printf("%6s %12s %14s %16s %16s %14s\n", "m", "count", "count/m^3", "tail", "remainder", "m*tail");
    for (int m = 1; m <= static_cast<int>(m_max); ++m) {
        const long long count = tns::lattice_count(m);
        const tns::LatticeTail tail = tns::lattice_tail(m);
        std::printf("%6d %12lld %14.9g %16.12g %16.6g %14.10g\n", m, count,
                    static_cast<double>(count) / (static_cast<double>(m) * m * m), tail.value, tail.remainder_bound,
                    m * tail.value);
    }
    const tns::LatticeCalibration cal = tns::calibrate_lattice_constants(m_max);
    std::printf("calibrated over real m in [1, %g]: c1 = %.12g, c2 = %.12g\n", m_max, cal.c1, cal.c2);
    return 0;
}

int cmd_oracle(int n, std::uint64_t seed) {
    if (n < 8 || n > 16 || n % 2 != 0) {
        std::cerr << "oracle: N must be an even integer in [8, 16] (direct convolution cost)\n";
        return kExitConfigError;
    }
    tns::InitialConditionSpec spec;
    spec.kind = tns::InitialConditionSpec::Kind::random_band;
    spec.amplitude = 1.0;
    spec.band_min = 1;
    spec.band_max = tns::dealias_limit(n);
    spec.seed = seed;
    const tns::SpectralField u = tns::ic_random_band(n, spec);

    const tns::SpectralField fast = tns::advective_term(u);
    const tns::SpectralField direct = tns::advective_term_direct(u);

    double diff_sq = 0.0;
    double ref_sq = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < u.grid.mode_count(); ++i) {
            diff_sq += std::norm(fast.comp[c][i] - direct.comp[c][i]);
            ref_sq += std::norm(direct.comp[c][i]);
        }
    const double rel = ref_sq > 0.0 ? std::sqrt(diff_sq / ref_sq) : std::sqrt(diff_sq);
    std::printf("oracle: N = %d, seed = %" PRIu64 "\n", n, seed);
    std::printf("oracle: |collocation - convolution| / |convolution| = %.3e\n", rel);
    const bool ok = rel <= 1e-10;
    std::printf("oracle: %s (tolerance 1e-10)\n", ok ? "MATCH" : "MISMATCH");
    return ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dealiased pseudospectral Navier-Stokes solver on the periodic 3-torus with a spectral "
                 "regularity monitor"};
    app.require_subcommand(1);

    Overrides overrides;
    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "simulate a config; write trajectory, checkpoints and report");
    run_cmd->add_option("config", config_path, "config file")->required();
    run_cmd->add_option("--out", overrides.out, "output directory override");
    run_cmd->add_option("--seed", overrides.seed, "seed override");
    run_cmd->add_option("--resolution", overrides.resolution, "modes-per-axis override");
    run_cmd->add_option("--nu", overrides.nu, "viscosity override");
    run_cmd->add_option("--tend", overrides.tend, "final time override");
    run_cmd->add_option("--ic", overrides.ic, "initial condition override (taylor_green|abc|random_band)");

    std::string trajectory_path, checkpoint_dir;
    std::optional<std::string> verify_config, verify_out;
    auto* verify_cmd = app.add_subcommand("verify", "run the regularity monitor on a stored trajectory");
    verify_cmd->add_option("trajectory", trajectory_path, "trajectory.csv")->required();
    verify_cmd->add_option("checkpoints", checkpoint_dir, "checkpoint directory")->required();
    verify_cmd->add_option("--config", verify_config, "config supplying monitor constants");
    verify_cmd->add_option("--out", verify_out, "report output directory");

    double m_max = 8.0;
    auto* lattice_cmd = app.add_subcommand("lattice", "print lattice counts, tails and calibrated constants");
    lattice_cmd->add_option("m_max", m_max, "largest cutoff")->required();

    int oracle_n = 12;
    std::uint64_t oracle_seed = 0;
    auto* oracle_cmd = app.add_subcommand("oracle", "compare collocation advection against the convolution oracle");
    oracle_cmd->add_option("N", oracle_n, "modes per axis (8..16)")->required();
    oracle_cmd->add_option("seed", oracle_seed, "random field seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (run_cmd->parsed())
            return cmd_run(config_path, overrides);
        if (verify_cmd->parsed())
            return cmd_verify(trajectory_path, checkpoint_dir, verify_config, verify_out);
        if (lattice_cmd->parsed())
            return cmd_lattice(m_max);
        return cmd_oracle(oracle_n, oracle_seed);
    } catch (const tns::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
