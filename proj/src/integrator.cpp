#include "tns/integrator.hpp"

#include <cmath>
#include <sstream>

namespace tns {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Diagnostics {
    double energy = 0.0;
    double grad_sq = 0.0;
    double lap_sq = 0.0;
    double abs_sum = 0.0;
};

Diagnostics diagnostics(const SpectralField& f) {
    Diagnostics d;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double k2 = static_cast<double>(WaveGrid::squared_norm(f.grid.wavevector_at(i)));
        const double mag2 = std::norm(f.comp[0][i]) + std::norm(f.comp[1][i]) + std::norm(f.comp[2][i]);
        d.energy += mag2;
        d.grad_sq += k2 * mag2;
        d.lap_sq += k2 * k2 * mag2;
        d.abs_sum += std::sqrt(mag2);
    }
    return d;
}

} // namespace

BlowupError::BlowupError(double time, const Wavevector& where)
    : std::runtime_error("blow-up sentinel: non-finite coefficient at t = " + std::to_string(time) + ", k = " +
                         to_string(where)),
      time_(time), where_(where) {}

SpectralField step(const SpectralField& u, double dt, double nu, AdvectionWorkspace& ws, double t_now) {
    if (!(dt > 0.0) || !(nu > 0.0))
        throw std::invalid_argument("step: dt and nu must be positive");

    const WaveGrid& grid = u.grid;
    const std::size_t n = grid.mode_count();

    std::vector<double> e_half(n), e_full(n);
    const auto& k_squared = ws.k_squared();
    for (std::size_t i = 0; i < n; ++i) {
        e_half[i] = std::exp(-nu * k_squared[i] * (0.5 * dt));
        e_full[i] = std::exp(-nu * k_squared[i] * dt);
    }

    const auto rhs = [&](const SpectralField& v) {
        SpectralField r = advective_term(v, ws);
        for (auto& comp : r.comp)
            for (auto& z : comp)
                z = -z;
        return r;
    };

    const SpectralField a = rhs(u);

    SpectralField stage(grid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i)
            stage.comp[c][i] = e_half[i] * (u.comp[c][i] + (0.5 * dt) * a.comp[c][i]);
    const SpectralField b = rhs(stage);

    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i)
            stage.comp[c][i] = e_half[i] * u.comp[c][i] + (0.5 * dt) * b.comp[c][i];
    const SpectralField cc = rhs(stage);

    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i)
            stage.comp[c][i] = e_full[i] * u.comp[c][i] + dt * e_half[i] * cc.comp[c][i];
    const SpectralField d = rhs(stage);

    SpectralField out(grid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i)
            out.comp[c][i] = e_full[i] * u.comp[c][i] +
                             (dt / 6.0) * (e_full[i] * a.comp[c][i] +
                                           2.0 * e_half[i] * (b.comp[c][i] + cc.comp[c][i]) + d.comp[c][i]);

    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(out.comp[c][i].real()) || !std::isfinite(out.comp[c][i].imag()))
                throw BlowupError(t_now + dt, grid.wavevector_at(i));

    return out;
}

SpectralField step(const SpectralField& u, double dt, double nu) {
    AdvectionWorkspace ws(u.grid);
    return step(u, dt, nu, ws);
}

double cfl_dt(const SpectralField& u, double safety, AdvectionWorkspace& ws, double floor_eps, double dt_max) {
    if (!(safety > 0.0) || safety > 1.0)
        throw std::invalid_argument("cfl_dt: safety must lie in (0, 1]");
    const double spacing = 2.0 * kPi / u.grid.modes_per_axis();
    const double speed = max_pointwise_speed(u, ws);
    return std::min(dt_max, safety * spacing / (speed + floor_eps));
}

double cfl_dt(const SpectralField& u, double safety) {
    AdvectionWorkspace ws(u.grid);
    return cfl_dt(u, safety, ws);
}

RunResult run(const SpectralField& u0, const RunSettings& settings, const MonitorConfig& monitor,
              const SampleSink& sink) {
    if (!(settings.nu > 0.0))
        throw std::invalid_argument("run: nu must be positive");
    if (!(settings.t_end > 0.0))
        throw std::invalid_argument("run: t_end must be positive");
    if (settings.sample_every < 1)
        throw std::invalid_argument("run: sample_every must be >= 1");
    if (settings.fixed_dt && !(*settings.fixed_dt > 0.0))
        throw std::invalid_argument("run: fixed dt must be positive");

    AdvectionWorkspace ws(u0.grid);
    CutoffTracker tracker(monitor, settings.nu);

    RunResult result;
    result.final_field = u0;

    SpectralField u = u0;
    double t = 0.0;
    double prev_t = 0.0;
    double prev_grad = 0.0;
    double dissipation = 0.0;
    const double t_eps = 1e-12 * std::max(1.0, settings.t_end);

    const auto emit = [&](double now, const SpectralField& field) {
        const Diagnostics d = diagnostics(field);
        if (!result.samples.empty())
            dissipation += settings.nu * (now - prev_t) * 0.5 * (d.grad_sq + prev_grad);
        const auto [f, active_m] = tracker.observe(now, d.grad_sq, field);
        TrajectorySample sample;
        sample.t = now;
        sample.energy = d.energy;
        sample.grad_sq = d.grad_sq;
        sample.lap_sq = d.lap_sq;
        sample.abs_sum_total = d.abs_sum;
        sample.f_m = f;
        sample.active_m = active_m;
        sample.dissipation_integral = dissipation;
        result.samples.push_back(sample);
        if (sink)
            sink(sample, field);
        prev_t = now;
        prev_grad = d.grad_sq;
    };

    emit(0.0, u);

    long long step_count = 0;
    try {
        while (settings.t_end - t > t_eps) {
            double dt = settings.fixed_dt ? *settings.fixed_dt
                                          : cfl_dt(u, settings.cfl_safety, ws, settings.cfl_floor, settings.dt_max);
            dt = std::min(dt, settings.t_end - t);
            u = step(u, dt, settings.nu, ws, t);
            t += dt;
            ++step_count;
            const bool done = settings.t_end - t <= t_eps;
            if (step_count % settings.sample_every == 0 || done)
                emit(t, u);
        }
    } catch (const BlowupError& e) {
        result.blew_up = true;
        result.blowup_time = e.time();
        result.blowup_wavevector = e.where();
    }

    result.final_field = std::move(u);
    return result;
}

} // namespace tns
