#pragma once

#include <cstdint>
#include <vector>

#include "tns/spectral_field.hpp"

namespace tns {

/// Per-axis dealias limit floor(N/3); products of fields supported on the
/// ball |k| <= floor(N/3) are then alias-free on the N^3 collocation grid.
int dealias_limit(int modes_per_axis);

/// Retained by the dealias mask: every |k_i| <= floor(N/3) and |k| <= floor(N/3).
bool in_dealias_mask(const WaveGrid& grid, const Wavevector& k);

/// Collocation buffers and FFT plans for evaluating the advection term.
/// Not shareable between concurrent calls; use one workspace per worker.
class AdvectionWorkspace {
  public:
    explicit AdvectionWorkspace(const WaveGrid& grid);
    ~AdvectionWorkspace();
    AdvectionWorkspace(const AdvectionWorkspace&) = delete;
    AdvectionWorkspace& operator=(const AdvectionWorkspace&) = delete;

    const WaveGrid& grid() const { return grid_; }

    /// buffer <- coeffs, then unnormalized backward transform (synthesis).
    void synthesize_to_buffer(const std::vector<Complex>& coeffs);
    /// forward transform of buffer, normalized by 1/N^3 (analysis).
    void analyze_buffer(std::vector<Complex>& coeffs_out);

    Complex* buffer() { return buffer_; }
    std::vector<Complex>& velocity(int component) { return velocity_[component]; }
    std::vector<Complex>& accumulator() { return accumulator_; }

    // per-mode lookup tables, precomputed once for the hot loops
    const std::vector<double>& frequency(int axis) const { return frequency_[axis]; }
    const std::vector<double>& k_squared() const { return k_squared_; }
    const std::vector<std::uint32_t>& mirror() const { return mirror_; }
    const std::vector<unsigned char>& dealias_mask() const { return dealias_mask_; }

  private:
    WaveGrid grid_;
    Complex* buffer_;
    void* plan_backward_;
    void* plan_forward_;
    std::vector<Complex> velocity_[3];
    std::vector<Complex> accumulator_;
    std::vector<double> frequency_[3];
    std::vector<double> k_squared_;
    std::vector<std::uint32_t> mirror_;
    std::vector<unsigned char> dealias_mask_;
};

/// Dealiased, Galerkin-truncated, Leray-projected advection term
/// P P_n[(u . grad) u] in spectral space (convective form, collocation
/// products). Rejects inputs whose divergence_sup exceeds 1e-8 relative
/// to the largest coefficient.
SpectralField advective_term(const SpectralField& u, AdvectionWorkspace& ws);
SpectralField advective_term(const SpectralField& u);

/// Slow exact oracle: the truncated convolution sum_{p+q=k} i (uhat(p).q) uhat(q)
/// evaluated termwise for every k in the dealias mask, then projected.
/// No aliasing by construction; intended for small grids.
SpectralField advective_term_direct(const SpectralField& u);

/// Zeroes every coefficient with |k| > n (ball truncation P_n).
SpectralField galerkin_truncate(const SpectralField& u, double n);

/// max over collocation points of |u(x)| (Euclidean over components).
double max_pointwise_speed(const SpectralField& u, AdvectionWorkspace& ws);
double max_pointwise_speed(const SpectralField& u);

} // namespace tns
