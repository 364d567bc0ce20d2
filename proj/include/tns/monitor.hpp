#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tns/spectral_field.hpp"
#include "tns/trajectory.hpp"

namespace tns {

struct MonitorConfig {
    enum class C1Mode { exact_lattice, integral };

    C1Mode c1_mode = C1Mode::exact_lattice;
    /// Tail constant used when c1_mode == integral.
    double c1_value = 16.0;
    /// Ball-count constant; empty means the calibrated lattice value.
    std::optional<double> c2_value;
    /// Constant in the local comparison envelope W(t).
    double c_local = 1.0;
    /// Sign-detection band; empty means 1e-9 * sum|uhat| at the first
    /// sampled instant after t = 0.
    std::optional<double> hysteresis;
    /// Intervals shorter than this are dropped from the report.
    double min_interval = 0.0;

    bool operator==(const MonitorConfig&) const = default;
};

/// Tail constant in force for a configuration (calibrated unless integral mode).
double resolve_c1(const MonitorConfig& cfg);
/// Ball-count constant in force for a configuration.
double resolve_c2(const MonitorConfig& cfg);

/// F_m(t) = sum_{|k|<=m} |uhat| - sum_{|k|>m} |uhat|.
double f_m(const SpectralField& u, double m);

/// Cutoff associated to an interval start: 8 ||grad u||^2 / (c1 nu^2),
/// rounded up to an integer ball radius so membership tests stay exact.
/// Always strictly exceeds the admissibility threshold 4 ||grad u||^2 / (c1 nu^2).
double choose_cutoff(double grad_l2_sq, double nu, double c1);

/// Gronwall growth factor exponent for a low-dominant interval:
/// 2 C(m) ||u0||^2 dt with C(m) = 2 * lattice_count(m) / nu.
double case1_exponent(double m, double u0_l2_sq, double nu, double delta_t);

/// ||grad u(t_j)||^2 * exp(case1_exponent); overflows to +inf for large
/// exponents, so comparisons should use case1_exponent directly.
double case1_bound(double grad_sq_tj, double m, double u0_l2_sq, double nu, double delta_t);

/// Variant with the ball count replaced by c2 m^3 and m eliminated:
/// grad * exp{ 2048 c2 / (c1^3 nu^7) * grad^3 * ||u0||^2 * dt }.
double case1_bound_explicit(double grad_sq_tj, double u0_l2_sq, double nu, double c1, double c2, double delta_t);

/// Blow-up time of the comparison ODE x' = c x^3: 1 / (2 c grad_sq_0^2).
double w_expiry_time(double grad_sq_0, double c);

/// W(t) = grad_sq_0 / sqrt(1 - 2 c t grad_sq_0^2); empty once t >= expiry.
std::optional<double> local_envelope_W(double t, double grad_sq_0, double c);

/// Viscous decrease margin nu - 2 sqrt(c1) m^{-1/2} ||grad u||.
double case2_margin(const SpectralField& u, double m, double nu, double c1);
double case2_margin_from_grad_sq(double grad_sq, double m, double nu, double c1);

/// Sign of f against the hysteresis band: +1 low-dominant, -1 high-dominant,
/// 0 inside the band.
int classify_sign(double f, double hysteresis);

enum class CaseLabel { low_dominant, high_dominant, mixed };

std::string to_string(CaseLabel label);

/// Maximal sign-constant run of a sampled F_m series.
struct IntervalSketch {
    int j = 0;
    std::size_t first_sample = 0; ///< index into the series
    std::size_t last_sample = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    CaseLabel label = CaseLabel::mixed;
};

/// Splits a time-sorted (t, f) series into maximal runs where f stays on one
/// side of the +-hysteresis band. In-band values extend the current run;
/// a run boundary sits at the first sample beyond the band with the opposite
/// sign (that sample ends one run and starts the next, so runs tile the
/// series). The label is mixed only when no sample ever left the band.
/// Runs need at least two samples, so a reversal at the final sample only
/// closes the preceding run.
std::vector<IntervalSketch> detect_intervals(const std::vector<std::pair<double, double>>& series, double hysteresis);

/// One verified sign-constant interval [t_j, t_{j+1}].
struct IntervalRecord {
    int j = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    double m_j = 0.0;
    CaseLabel case_label = CaseLabel::mixed;
    double grad_sq_start = 0.0;
    double grad_sq_end = 0.0;
    /// Low-dominant: Gronwall bound at t_end (capped at DBL_MAX);
    /// high-dominant: grad_sq_start; mixed: NaN (serialized as null).
    double bound_value_at_end = 0.0;
    bool satisfied = true;
    /// min over interval samples of the viscous margin; high-dominant only.
    std::optional<double> margin_min;
};

struct WEnvelopeVerdict {
    double valid_until = 0.0;
    bool satisfied_within_window = true;
};

/// Machine-readable flag for a violated claim; never an exception.
struct Note {
    std::string type;
    std::vector<std::pair<std::string, double>> data;
};

struct ResolvedConstants {
    double c1 = 0.0;
    std::string c1_mode;
    double c2 = 0.0;
    double c_local = 0.0;
    double hysteresis = 0.0;
    double min_interval = 0.0;
    std::string rng = "mt19937_64";
    std::uint64_t seed = 0;
};

struct BoundReport {
    std::vector<IntervalRecord> intervals;
    double energy_inequality_residual = 0.0;
    long long chain_check_failures = 0;
    WEnvelopeVerdict w_envelope;
    double global_sup_grad_sq = 0.0;
    std::vector<Note> notes;
    ResolvedConstants constants_used;
};

/// Access to the saved field at a sample index; empty when missing.
using FieldProvider = std::function<std::optional<SpectralField>(std::size_t)>;

/// Runs the full interval-subdivision verification over a finished
/// trajectory: re-derives the sign-constant intervals from the sampled F_m
/// series, re-chooses each cutoff from ||grad u(t_j)||^2, checks the
/// per-interval growth/decrease bounds, the energy inequality, the local
/// W envelope, and the three spectral chain inequalities at every available
/// checkpoint. Violations become notes.
BoundReport verify_trajectory(const Trajectory& traj, const FieldProvider& fields, const MonitorConfig& cfg,
                              double nu);

/// Online cutoff bookkeeping used while a run is in progress: chooses the
/// first cutoff at the first sample after t = 0 and re-chooses it whenever
/// the recorded F_m series leaves the band with a reversed sign.
class CutoffTracker {
  public:
    CutoffTracker(const MonitorConfig& cfg, double nu);

    /// Returns (f_m, active_m) to record for a sample of u at time t.
    std::pair<double, double> observe(double t, double grad_sq, const SpectralField& u);

  private:
    double nu_;
    double c1_;
    std::optional<double> configured_hysteresis_;
    double hysteresis_ = 0.0;
    bool started_ = false;
    double active_m_ = 1.0;
    int current_sign_ = 0;
};

} // namespace tns
