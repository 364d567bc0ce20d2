#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tns/initial_conditions.hpp"
#include "tns/integrator.hpp"
#include "test_helpers.hpp"

using namespace tns;
using namespace tns::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("step: a single mode decays by the exact integrating factor") {
    const SpectralField u = leray_project(
        synthesize(WaveGrid(12), {{{2, 1, 0}, {Complex(0.3, 0.1), Complex(-0.1, 0.2), Complex(0.0, 0.4)}}}));
    const double nu = 0.37;
    for (const double dt : {1e-3, 0.05, 0.4}) {
        const SpectralField next = step(u, dt, nu);
        const double factor = std::exp(-nu * 5.0 * dt); // |k|^2 = 5
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < u.grid.mode_count(); ++i) {
                const Complex expected = factor * u.comp[c][i];
                CHECK(std::abs(next.comp[c][i] - expected) <= 1e-14 * std::max(1.0, std::abs(expected)));
            }
    }
}

TEST_CASE("step: Taylor-Green scales by exp(-2 nu dt) in one step") {
    const SpectralField u = ic_taylor_green(16);
    const double nu = 0.1, dt = 1e-3;
    const SpectralField next = step(u, dt, nu);
    const double factor = std::exp(-2.0 * nu * dt);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < u.grid.mode_count(); ++i)
            CHECK(std::abs(next.comp[c][i] - factor * u.comp[c][i]) <= 1e-12);
}

TEST_CASE("step: fourth-order global convergence on a random field") {
    InitialConditionSpec spec;
    spec.kind = InitialConditionSpec::Kind::random_band;
    spec.amplitude = 3.0;
    spec.band_min = 1;
    spec.band_max = 4;
    spec.slope = -1.0;
    spec.seed = 2024;
    const SpectralField u0 = ic_random_band(16, spec);

    const double nu = 0.02, t_end = 0.2;
    AdvectionWorkspace ws(u0.grid);
    const auto march = [&](double dt) {
        SpectralField u = u0;
        const long long steps = std::llround(t_end / dt);
        for (long long i = 0; i < steps; ++i)
            u = step(u, dt, nu, ws);
        return u;
    };

    const SpectralField ref = march(t_end / 1024);
    const double err_coarse = field_distance(march(t_end / 32), ref);
    const double err_fine = field_distance(march(t_end / 64), ref);
    const double ratio = err_coarse / err_fine;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("step: blow-up sentinel reports time and wavevector") {
    InitialConditionSpec spec;
    spec.kind = InitialConditionSpec::Kind::random_band;
    spec.amplitude = 1e8;
    spec.band_min = 1;
    spec.band_max = 2;
    spec.seed = 1;
    const SpectralField u0 = ic_random_band(8, spec);

    RunSettings settings;
    settings.nu = 1e-4;
    settings.fixed_dt = 10.0;
    settings.t_end = 100.0;
    settings.sample_every = 1;
    const RunResult result = run(u0, settings, MonitorConfig{});
    CHECK(result.blew_up);
    CHECK(result.blowup_time > 0.0);
    CHECK(!result.samples.empty()); // partial trajectory preserved
}

TEST_CASE("cfl_dt: degenerate, nominal and scaling behaviour") {
    const SpectralField zero = synthesize(WaveGrid(32), {});
    CHECK(cfl_dt(zero, 0.5) == doctest::Approx(0.1).epsilon(1e-12)); // capped at dt_max

    const SpectralField tg = ic_taylor_green(32);
    const double expected = 0.5 * (2.0 * kPi / 32.0) / 1.0;
    CHECK(cfl_dt(tg, 0.5) == doctest::Approx(expected).epsilon(1e-9));

    const SpectralField tg2 = ic_taylor_green(32, 2.0);
    CHECK(cfl_dt(tg2, 0.5) == doctest::Approx(expected / 2.0).epsilon(1e-9));

    CHECK_THROWS_AS(cfl_dt(tg, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cfl_dt(tg, 1.5), std::invalid_argument);
}

TEST_CASE("run: Taylor-Green gradient follows the exact decay law") {
    RunSettings settings;
    settings.nu = 0.1;
    settings.fixed_dt = 1e-3;
    settings.t_end = 0.25;
    settings.sample_every = 25;
    const RunResult result = run(ic_taylor_green(16), settings, MonitorConfig{});
    REQUIRE(result.samples.size() > 2);
    for (const TrajectorySample& s : result.samples)
        CHECK(s.grad_sq == doctest::Approx(std::exp(-4.0 * settings.nu * s.t)).epsilon(1e-9));
    CHECK(!result.blew_up);
}

TEST_CASE("run: zero initial data stays identically zero") {
    RunSettings settings;
    settings.nu = 0.1;
    settings.fixed_dt = 1e-2;
    settings.t_end = 0.1;
    settings.sample_every = 2;
    const RunResult result = run(synthesize(WaveGrid(8), {}), settings, MonitorConfig{});
    for (const TrajectorySample& s : result.samples) {
        CHECK(s.energy == 0.0);
        CHECK(s.grad_sq == 0.0);
        CHECK(s.abs_sum_total == 0.0);
        CHECK(s.f_m == 0.0);
        CHECK(s.dissipation_integral == 0.0);
    }
}

TEST_CASE("run: energy inequality and two-sided balance") {
    InitialConditionSpec spec;
    spec.kind = InitialConditionSpec::Kind::random_band;
    spec.amplitude = 2.0;
    spec.band_min = 1;
    spec.band_max = 4;
    spec.seed = 5;
    const SpectralField u0 = ic_random_band(16, spec);

    RunSettings settings;
    settings.nu = 0.05;
    settings.fixed_dt = 2e-3;
    settings.t_end = 0.4;
    settings.sample_every = 1; // fine sampling keeps the trapezoid error small
    const RunResult result = run(u0, settings, MonitorConfig{});
    REQUIRE(!result.blew_up);

    const double e0 = result.samples.front().energy;
    for (const TrajectorySample& s : result.samples)
        CHECK(s.energy + s.dissipation_integral - e0 <= 1e-8 * e0);

    // the untruncated balance: energy(0) - energy(t) = 2 nu int ||grad u||^2
    const TrajectorySample& last = result.samples.back();
    const double lost = e0 - last.energy;
    CHECK(lost == doctest::Approx(2.0 * last.dissipation_integral).epsilon(1e-5));
}

TEST_CASE("run: divergence-free preservation along a run") {
    InitialConditionSpec spec;
    spec.kind = InitialConditionSpec::Kind::random_band;
    spec.amplitude = 2.0;
    spec.band_min = 1;
    spec.band_max = 4;
    spec.seed = 9;
    const SpectralField u0 = ic_random_band(16, spec);

    RunSettings settings;
    settings.nu = 0.05;
    settings.fixed_dt = 2e-3;
    settings.t_end = 0.2;
    settings.sample_every = 20;

    std::vector<double> ratios;
    const SampleSink sink = [&](const TrajectorySample&, const SpectralField& field) {
        const double scale = max_coeff_magnitude(field);
        if (scale > 0.0)
            ratios.push_back(divergence_sup(field) / scale);
    };
    run(u0, settings, MonitorConfig{}, sink);
    REQUIRE(!ratios.empty());
    for (const double r : ratios)
        CHECK(r <= 1e-11);
}

TEST_CASE("run: validates settings") {
    const SpectralField u0 = ic_taylor_green(8);
    RunSettings bad;
    bad.nu = -1.0;
    CHECK_THROWS_AS(run(u0, bad, MonitorConfig{}), std::invalid_argument);
    RunSettings bad2;
    bad2.t_end = 0.0;
    CHECK_THROWS_AS(run(u0, bad2, MonitorConfig{}), std::invalid_argument);
    RunSettings bad3;
    bad3.sample_every = 0;
    CHECK_THROWS_AS(run(u0, bad3, MonitorConfig{}), std::invalid_argument);
}
