#pragma once

#include <random>
#include <utility>
#include <vector>

#include "tns/nonlinear.hpp"
#include "tns/spectral_field.hpp"

namespace tns::testing {

inline double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

inline bool canonical_half(const Wavevector& k) {
    if (k[0] != 0)
        return k[0] > 0;
    if (k[1] != 0)
        return k[1] > 0;
    return k[2] > 0;
}

/// Hermitian, mean-free field with random coefficients on every
/// non-Nyquist mode; not projected, not dealiased.
inline SpectralField random_raw_field(int n, std::uint64_t seed) {
    const WaveGrid grid(n);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Wavevector, ComplexVec3>> modes;
    for (std::size_t i = 0; i < grid.mode_count(); ++i) {
        const Wavevector k = grid.wavevector_at(i);
        if (!canonical_half(k) || grid.is_nyquist(k))
            continue;
        ComplexVec3 v;
        for (int c = 0; c < 3; ++c)
            v[c] = Complex(uniform_pm1(rng), uniform_pm1(rng));
        modes.emplace_back(k, v);
    }
    return synthesize(grid, modes);
}

/// Divergence-free random field supported inside the dealias mask.
inline SpectralField random_masked_field(int n, std::uint64_t seed) {
    const WaveGrid grid(n);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Wavevector, ComplexVec3>> modes;
    for (std::size_t i = 0; i < grid.mode_count(); ++i) {
        const Wavevector k = grid.wavevector_at(i);
        if (!canonical_half(k) || !in_dealias_mask(grid, k))
            continue;
        ComplexVec3 v;
        for (int c = 0; c < 3; ++c)
            v[c] = Complex(uniform_pm1(rng), uniform_pm1(rng));
        modes.emplace_back(k, v);
    }
    return leray_project(synthesize(grid, modes));
}

inline double field_distance(const SpectralField& a, const SpectralField& b) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.grid.mode_count(); ++i)
            sum += std::norm(a.comp[c][i] - b.comp[c][i]);
    return std::sqrt(sum);
}

inline double field_norm(const SpectralField& a) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.grid.mode_count(); ++i)
            sum += std::norm(a.comp[c][i]);
    return std::sqrt(sum);
}

} // namespace tns::testing
