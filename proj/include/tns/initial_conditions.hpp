#pragma once

#include <cstdint>

#include "tns/spectral_field.hpp"

namespace tns {

struct InitialConditionSpec {
    enum class Kind { taylor_green, abc, random_band };

    Kind kind = Kind::taylor_green;
    /// taylor_green / abc: field amplitude; random_band: target ||grad u0||_{L2}.
    double amplitude = 1.0;
    int band_min = 1;
    int band_max = 2;
    /// Spectral exponent |k|^slope applied inside the band.
    double slope = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const InitialConditionSpec&) const = default;
};

/// (sin x cos y, -cos x sin y, 0) scaled by amplitude: eight coefficient
/// entries of magnitude amplitude/4, all at |k|^2 = 2.
SpectralField ic_taylor_green(int modes_per_axis, double amplitude = 1.0);

/// Beltrami field (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x);
/// curl u = u, so the projected advection term vanishes and the flow decays
/// as u0 e^{-nu t}.
SpectralField ic_abc(int modes_per_axis, double a, double b, double c);

/// Seeded random divergence-free field supported on band_min <= |k| <= band_max,
/// Leray-projected and rescaled so that ||grad u||_{L2} equals spec.amplitude.
SpectralField ic_random_band(int modes_per_axis, const InitialConditionSpec& spec);

SpectralField make_initial_condition(int modes_per_axis, const InitialConditionSpec& spec);

} // namespace tns
