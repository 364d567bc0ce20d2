#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace tns {

/// Integer wavevector on the 2*pi-periodic box.
using Wavevector = std::array<int, 3>;

/// Fourier lattice for an N^3 collocation grid. Each wavevector component
/// lies in {-N/2+1, ..., N/2}; storage follows the standard FFT index
/// convention (index i maps to frequency i for i <= N/2, i - N otherwise).
class WaveGrid {
  public:
    WaveGrid() : n_(0) {}

    explicit WaveGrid(int modes_per_axis) : n_(modes_per_axis) {
        if (n_ < 2 || n_ % 2 != 0)
            throw std::invalid_argument("WaveGrid: modes-per-axis must be an even integer >= 2, got " +
                                        std::to_string(n_));
    }

    int modes_per_axis() const { return n_; }
    std::size_t mode_count() const {
        const std::size_t n = static_cast<std::size_t>(n_);
        return n * n * n;
    }

    /// Frequency carried by a 1-d storage index.
    int frequency(int storage_index) const { return storage_index <= n_ / 2 ? storage_index : storage_index - n_; }

    /// Storage index of a 1-d frequency in (-N/2, N/2].
    int storage_of(int frequency) const { return frequency >= 0 ? frequency : frequency + n_; }

    bool component_in_range(int k) const { return k > -n_ / 2 && k <= n_ / 2; }

    bool contains(const Wavevector& k) const {
        return component_in_range(k[0]) && component_in_range(k[1]) && component_in_range(k[2]);
    }

    /// A wavevector whose mirror -k is not representable on the grid.
    bool is_nyquist(const Wavevector& k) const {
        return k[0] == n_ / 2 || k[1] == n_ / 2 || k[2] == n_ / 2;
    }

    std::size_t index_of(const Wavevector& k) const {
        return (static_cast<std::size_t>(storage_of(k[0])) * n_ + storage_of(k[1])) * n_ + storage_of(k[2]);
    }

    Wavevector wavevector_at(std::size_t index) const {
        const int iz = static_cast<int>(index % n_);
        const int iy = static_cast<int>((index / n_) % n_);
        const int ix = static_cast<int>(index / (static_cast<std::size_t>(n_) * n_));
        return {frequency(ix), frequency(iy), frequency(iz)};
    }

    /// Storage index of -k. Nyquist components map to themselves.
    std::size_t mirror_index(std::size_t index) const {
        const int iz = static_cast<int>(index % n_);
        const int iy = static_cast<int>((index / n_) % n_);
        const int ix = static_cast<int>(index / (static_cast<std::size_t>(n_) * n_));
        const auto neg = [this](int i) { return (n_ - i) % n_; };
        return (static_cast<std::size_t>(neg(ix)) * n_ + neg(iy)) * n_ + neg(iz);
    }

    static long long squared_norm(const Wavevector& k) {
        return static_cast<long long>(k[0]) * k[0] + static_cast<long long>(k[1]) * k[1] +
               static_cast<long long>(k[2]) * k[2];
    }

    bool operator==(const WaveGrid&) const = default;

  private:
    int n_;
};

inline std::string to_string(const Wavevector& k) {
    return "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ")";
}

} // namespace tns
