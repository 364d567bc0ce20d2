#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "tns/monitor.hpp"
#include "tns/nonlinear.hpp"
#include "tns/spectral_field.hpp"
#include "tns/trajectory.hpp"

namespace tns {

/// Raised when a non-finite coefficient appears after a step.
class BlowupError : public std::runtime_error {
  public:
    BlowupError(double time, const Wavevector& where);
    double time() const { return time_; }
    const Wavevector& where() const { return where_; }

  private:
    double time_;
    Wavevector where_;
};

/// One integrating-factor RK4 step of the truncated system: the viscous part
/// is applied exactly through exp(-nu |k|^2 dt) at every substage, the
/// advection term is evaluated spectrally. Throws BlowupError on non-finite
/// output (t_now only labels the error).
SpectralField step(const SpectralField& u, double dt, double nu, AdvectionWorkspace& ws, double t_now = 0.0);
SpectralField step(const SpectralField& u, double dt, double nu);

/// Advective time-step limit safety * (2 pi / N) / (max speed + floor),
/// capped at dt_max.
double cfl_dt(const SpectralField& u, double safety, AdvectionWorkspace& ws, double floor_eps = 1e-12,
              double dt_max = 0.1);
double cfl_dt(const SpectralField& u, double safety);

struct RunSettings {
    double nu = 0.1;
    std::optional<double> fixed_dt; ///< empty: CFL-driven steps
    double cfl_safety = 0.4;
    double dt_max = 0.1;
    double cfl_floor = 1e-12;
    double t_end = 1.0;
    int sample_every = 10; ///< steps between diagnostic samples
};

/// Called once per emitted sample with the field at that instant.
using SampleSink = std::function<void(const TrajectorySample&, const SpectralField&)>;

struct RunResult {
    Trajectory samples;
    SpectralField final_field;
    bool blew_up = false;
    double blowup_time = 0.0;
    Wavevector blowup_wavevector{0, 0, 0};
};

/// Marches u0 to t_end, emitting diagnostics every sample_every steps and at
/// the final time. The blow-up sentinel stops the march and leaves the
/// partial trajectory (and last finite field) in the result.
RunResult run(const SpectralField& u0, const RunSettings& settings, const MonitorConfig& monitor,
              const SampleSink& sink = {});

} // namespace tns
