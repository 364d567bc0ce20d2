#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "tns/wave_grid.hpp"

namespace tns {

using Complex = std::complex<double>;
using ComplexVec3 = std::array<Complex, 3>;

/// Divergence-free periodic velocity field stored as Fourier coefficients
/// u(x) = sum_k uhat(k) e^{ikx} on the 2*pi box. The norm convention is
/// unitary: ||u||_{L2}^2 = sum_k |uhat(k)|^2.
///
/// Invariants kept by every constructor and operation here:
///   - Hermitian symmetry uhat(-k) = conj(uhat(k)) (real physical field),
///   - uhat(0) = 0 (mean-free),
///   - Nyquist planes (any component == N/2) identically zero.
struct SpectralField {
    WaveGrid grid;
    std::array<std::vector<Complex>, 3> comp;

    SpectralField() = default;
    explicit SpectralField(const WaveGrid& g) : grid(g) {
        for (auto& c : comp)
            c.assign(g.mode_count(), Complex(0.0, 0.0));
    }

    ComplexVec3 at(std::size_t index) const { return {comp[0][index], comp[1][index], comp[2][index]}; }
    ComplexVec3 at(const Wavevector& k) const { return at(grid.index_of(k)); }

    void set(std::size_t index, const ComplexVec3& v) {
        comp[0][index] = v[0];
        comp[1][index] = v[1];
        comp[2][index] = v[2];
    }
};

/// |uhat(k)| as the Euclidean norm of the complex coefficient 3-vector.
inline double coeff_magnitude(const SpectralField& f, std::size_t index) {
    return std::sqrt(std::norm(f.comp[0][index]) + std::norm(f.comp[1][index]) + std::norm(f.comp[2][index]));
}

/// Builds a field from explicitly listed modes; Hermitian mirrors are filled
/// in automatically. Rejects wavevectors outside the grid (or on a Nyquist
/// plane), a nonzero k=0 entry, and mirror pairs that conflict.
SpectralField synthesize(const WaveGrid& grid, const std::vector<std::pair<Wavevector, ComplexVec3>>& modes);

/// Modewise Leray projection uhat -> uhat - k (k.uhat)/|k|^2; k=0 untouched.
SpectralField leray_project(const SpectralField& f);

/// Lattice Sobolev norm: sqrt(sum |k|^{2s} |uhat|^2) when homogeneous, else
/// sqrt(sum (1 + |k|^{2s}) |uhat|^2). |k|^{2s} at k=0 is 1 for s=0 and 0
/// otherwise, so the homogeneous s=0 norm is the L2 norm.
double sobolev_norm(const SpectralField& f, double s, bool homogeneous);

struct MassSplit {
    double low = 0.0;
    double high = 0.0;
};

/// (sum_{|k|<=m} |uhat|, sum_{|k|>m} |uhat|). Ball membership is decided on
/// the exact integer |k|^2 against m*m, and k=0 counts as low.
MassSplit spectral_mass_split(const SpectralField& f, double m);

/// max_k |k . uhat(k)|.
double divergence_sup(const SpectralField& f);

/// max_k |uhat(k)| (vector magnitude); the scale for relative tolerances.
double max_coeff_magnitude(const SpectralField& f);

/// sum_k |uhat(k)|, the paper-style upper bound for ||u||_inf.
double abs_coeff_sum(const SpectralField& f);

/// Real L2 inner product sum_k uhat(k) . conj(vhat(k)).
double inner_product(const SpectralField& f, const SpectralField& g);

/// Forces exact Hermitian symmetry by averaging uhat(k) with conj(uhat(-k))
/// and zeroing the Nyquist planes and the mean mode.
void enforce_reality(SpectralField& f);

/// Largest deviation |uhat(-k) - conj(uhat(k))| over the lattice.
double hermitian_defect(const SpectralField& f);

} // namespace tns
