#pragma once

#include <filesystem>
#include <string>

#include "tns/monitor.hpp"
#include "tns/spectral_field.hpp"
#include "tns/trajectory.hpp"

namespace tns {

/// Binary snapshot: magic "TNSCHK1", then little-endian u32 N, f64 nu,
/// f64 t, then (re, im) f64 pairs component by component in row-major
/// wavevector-index order.
void write_checkpoint(const std::filesystem::path& path, const SpectralField& field, double nu, double t);

struct Checkpoint {
    SpectralField field;
    double nu = 0.0;
    double t = 0.0;
};

Checkpoint read_checkpoint(const std::filesystem::path& path);

/// CSV columns, in order: t, energy, grad_sq, lap_sq, abs_sum_total, f_m,
/// active_m, dissipation_integral. 17 significant digits, so values
/// round-trip bit-exactly.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Report as a JSON document with 17-significant-digit floats; non-finite
/// values serialize as null.
std::string report_to_json(const BoundReport& report);
void write_report_json(const std::filesystem::path& path, const BoundReport& report);

} // namespace tns
