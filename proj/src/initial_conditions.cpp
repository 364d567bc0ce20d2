#include "tns/initial_conditions.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "tns/nonlinear.hpp"

namespace tns {

namespace {

void require_resolution(int n) {
    if (n < 8)
        throw std::invalid_argument("initial condition: resolution must be >= 8, got " + std::to_string(n));
}

// Uniform double in [-1, 1) from the raw generator word; pinned bit-for-bit
// so seeded fields reproduce across platforms.
double symmetric_uniform(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

bool canonical_half(const Wavevector& k) {
    if (k[0] != 0)
        return k[0] > 0;
    if (k[1] != 0)
        return k[1] > 0;
    return k[2] > 0;
}

} // namespace

SpectralField ic_taylor_green(int modes_per_axis, double amplitude) {
    require_resolution(modes_per_axis);
    const Complex neg(0.0, -0.25 * amplitude); // -i a/4
    const Complex pos(0.0, 0.25 * amplitude);  // +i a/4
    return synthesize(WaveGrid(modes_per_axis), {
                                                    {{1, 1, 0}, {neg, pos, Complex(0.0)}},
                                                    {{1, -1, 0}, {neg, neg, Complex(0.0)}},
                                                });
}

SpectralField ic_abc(int modes_per_axis, double a, double b, double c) {
    require_resolution(modes_per_axis);
    const auto half = [](double x) { return Complex(0.5 * x, 0.0); };
    const auto mihalf = [](double x) { return Complex(0.0, -0.5 * x); };
    return synthesize(WaveGrid(modes_per_axis), {
                                                    {{0, 0, 1}, {mihalf(a), half(a), Complex(0.0)}},
                                                    {{1, 0, 0}, {Complex(0.0), mihalf(b), half(b)}},
                                                    {{0, 1, 0}, {half(c), Complex(0.0), mihalf(c)}},
                                                });
}

SpectralField ic_random_band(int modes_per_axis, const InitialConditionSpec& spec) {
    require_resolution(modes_per_axis);
    const WaveGrid grid(modes_per_axis);
    const int limit = dealias_limit(modes_per_axis);
    if (spec.band_min < 1 || spec.band_min > spec.band_max)
        throw std::invalid_argument("ic_random_band: empty band");
    if (spec.band_max > limit)
        throw std::invalid_argument("ic_random_band: band (" + std::to_string(spec.band_min) + "," +
                                    std::to_string(spec.band_max) + ") exceeds the dealias limit " +
                                    std::to_string(limit));
    if (!(spec.amplitude > 0.0))
        throw std::invalid_argument("ic_random_band: amplitude must be positive");

    std::mt19937_64 rng(spec.seed);
    const long long lo2 = static_cast<long long>(spec.band_min) * spec.band_min;
    const long long hi2 = static_cast<long long>(spec.band_max) * spec.band_max;

    std::vector<std::pair<Wavevector, ComplexVec3>> modes;
    const std::size_t count = grid.mode_count();
    for (std::size_t i = 0; i < count; ++i) {
        const Wavevector k = grid.wavevector_at(i);
        if (!canonical_half(k))
            continue;
        const long long k2 = WaveGrid::squared_norm(k);
        if (k2 < lo2 || k2 > hi2 || !in_dealias_mask(grid, k))
            continue;
        const double scale = std::pow(static_cast<double>(k2), 0.5 * spec.slope);
        ComplexVec3 v;
        for (int c = 0; c < 3; ++c) {
            const double re = symmetric_uniform(rng);
            const double im = symmetric_uniform(rng);
            v[c] = scale * Complex(re, im);
        }
        modes.emplace_back(k, v);
    }
    if (modes.empty())
        throw std::invalid_argument("ic_random_band: empty band");

    SpectralField f = leray_project(synthesize(grid, modes));
    const double grad = sobolev_norm(f, 1.0, true);
    if (!(grad > 0.0))
        throw std::runtime_error("ic_random_band: degenerate draw, projected field vanished");
    const double rescale = spec.amplitude / grad;
    for (auto& comp : f.comp)
        for (auto& z : comp)
            z *= rescale;
    return f;
}

SpectralField make_initial_condition(int modes_per_axis, const InitialConditionSpec& spec) {
    switch (spec.kind) {
    case InitialConditionSpec::Kind::taylor_green:
        return ic_taylor_green(modes_per_axis, spec.amplitude);
    case InitialConditionSpec::Kind::abc:
        return ic_abc(modes_per_axis, spec.amplitude, spec.amplitude, spec.amplitude);
    default:
        return ic_random_band(modes_per_axis, spec);
    }
}

} // namespace tns
