#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "tns/initial_conditions.hpp"
#include "tns/integrator.hpp"
#include "tns/monitor.hpp"

namespace tns {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OutputConfig {
    std::string directory = "out";
    /// Write the field every this many samples (0 disables checkpoints).
    int checkpoint_every_sample = 1;

    bool operator==(const OutputConfig&) const = default;
};

struct SolverConfig {
    int resolution = 32;
    double nu = 0.1;
    std::optional<double> dt; ///< empty: CFL-driven stepping
    double cfl_safety = 0.4;
    double dt_max = 0.1;
    double t_end = 1.0;
    int sample_every = 10;
    InitialConditionSpec ic;
    MonitorConfig monitor;
    OutputConfig output;

    bool operator==(const SolverConfig&) const = default;
};

/// Parses the plain-text section/key=value format. Unknown sections or keys
/// and malformed or duplicate entries are errors.
SolverConfig parse_config(const std::string& text);
SolverConfig load_config(const std::filesystem::path& path);

/// Emits a config that parses back to an identical value.
std::string emit_config(const SolverConfig& cfg);

RunSettings run_settings(const SolverConfig& cfg);

} // namespace tns
