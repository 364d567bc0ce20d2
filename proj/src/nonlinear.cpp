#include "tns/nonlinear.hpp"

#include <fftw3.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tns {

int dealias_limit(int modes_per_axis) { return modes_per_axis / 3; }

bool in_dealias_mask(const WaveGrid& grid, const Wavevector& k) {
    const int n3 = dealias_limit(grid.modes_per_axis());
    if (std::abs(k[0]) > n3 || std::abs(k[1]) > n3 || std::abs(k[2]) > n3)
        return false;
    return WaveGrid::squared_norm(k) <= static_cast<long long>(n3) * n3;
}

AdvectionWorkspace::AdvectionWorkspace(const WaveGrid& grid) : grid_(grid) {
    const std::size_t n = grid_.mode_count();
    buffer_ = static_cast<Complex*>(fftw_malloc(sizeof(Complex) * n));
    const int N = grid_.modes_per_axis();
    plan_backward_ = fftw_plan_dft_3d(N, N, N, reinterpret_cast<fftw_complex*>(buffer_),
                                      reinterpret_cast<fftw_complex*>(buffer_), FFTW_BACKWARD, FFTW_ESTIMATE);
    plan_forward_ = fftw_plan_dft_3d(N, N, N, reinterpret_cast<fftw_complex*>(buffer_),
                                     reinterpret_cast<fftw_complex*>(buffer_), FFTW_FORWARD, FFTW_ESTIMATE);
    for (auto& v : velocity_)
        v.assign(n, Complex(0.0));
    accumulator_.assign(n, Complex(0.0));

    for (auto& f : frequency_)
        f.resize(n);
    k_squared_.resize(n);
    mirror_.resize(n);
    dealias_mask_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Wavevector k = grid_.wavevector_at(i);
        for (int c = 0; c < 3; ++c)
            frequency_[c][i] = static_cast<double>(k[c]);
        k_squared_[i] = static_cast<double>(WaveGrid::squared_norm(k));
        mirror_[i] = static_cast<std::uint32_t>(grid_.mirror_index(i));
        dealias_mask_[i] = in_dealias_mask(grid_, k) && k != Wavevector{0, 0, 0} ? 1 : 0;
    }
}

AdvectionWorkspace::~AdvectionWorkspace() {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_backward_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
    fftw_free(buffer_);
}

void AdvectionWorkspace::synthesize_to_buffer(const std::vector<Complex>& coeffs) {
    std::copy(coeffs.begin(), coeffs.end(), buffer_);
    fftw_execute(static_cast<fftw_plan>(plan_backward_));
}

void AdvectionWorkspace::analyze_buffer(std::vector<Complex>& coeffs_out) {
    fftw_execute(static_cast<fftw_plan>(plan_forward_));
    const std::size_t n = grid_.mode_count();
    const double scale = 1.0 / static_cast<double>(n);
    coeffs_out.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        coeffs_out[i] = buffer_[i] * scale;
}

namespace {

void require_divergence_free(const SpectralField& u, AdvectionWorkspace& ws) {
    const std::size_t n = u.grid.mode_count();
    double div_sq = 0.0;
    double scale_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex kdot = ws.frequency(0)[i] * u.comp[0][i] + ws.frequency(1)[i] * u.comp[1][i] +
                             ws.frequency(2)[i] * u.comp[2][i];
        div_sq = std::max(div_sq, std::norm(kdot));
        scale_sq = std::max(scale_sq,
                            std::norm(u.comp[0][i]) + std::norm(u.comp[1][i]) + std::norm(u.comp[2][i]));
    }
    if (div_sq > 1e-16 * scale_sq) {
        std::ostringstream oss;
        oss << "advective_term: input not divergence-free, divergence_sup = " << std::sqrt(div_sq)
            << " (max |uhat| = " << std::sqrt(scale_sq) << ")";
        throw std::invalid_argument(oss.str());
    }
}

} // namespace

SpectralField advective_term(const SpectralField& u, AdvectionWorkspace& ws) {
    require_divergence_free(u, ws);
    const WaveGrid& grid = u.grid;
    const std::size_t n = grid.mode_count();

    for (int c = 0; c < 3; ++c) {
        ws.synthesize_to_buffer(u.comp[c]);
        std::copy(ws.buffer(), ws.buffer() + n, ws.velocity(c).begin());
    }

    SpectralField out(grid);
    std::vector<Complex> derivative(n);
    for (int a = 0; a < 3; ++a) {
        auto& accum = ws.accumulator();
        std::fill(accum.begin(), accum.end(), Complex(0.0));
        for (int b = 0; b < 3; ++b) {
            const auto& freq = ws.frequency(b);
            for (std::size_t i = 0; i < n; ++i)
                derivative[i] = Complex(-freq[i] * u.comp[a][i].imag(), freq[i] * u.comp[a][i].real());
            ws.synthesize_to_buffer(derivative);
            const auto& vel = ws.velocity(b);
            for (std::size_t i = 0; i < n; ++i)
                accum[i] += vel[i] * ws.buffer()[i];
        }
        std::copy(accum.begin(), accum.end(), ws.buffer());
        ws.analyze_buffer(out.comp[a]);
    }

    // dealias + mean removal, Hermitian repair, then the projector last
    const auto& mask = ws.dealias_mask();
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i)
            if (!mask[i])
                out.comp[c][i] = Complex(0.0);
    const auto& mirror = ws.mirror();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = mirror[i];
        if (m <= i)
            continue;
        for (int c = 0; c < 3; ++c) {
            const Complex avg = 0.5 * (out.comp[c][i] + std::conj(out.comp[c][m]));
            out.comp[c][i] = avg;
            out.comp[c][m] = std::conj(avg);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double k2 = ws.k_squared()[i];
        if (k2 == 0.0)
            continue;
        const Complex kdot = ws.frequency(0)[i] * out.comp[0][i] + ws.frequency(1)[i] * out.comp[1][i] +
                             ws.frequency(2)[i] * out.comp[2][i];
        const Complex scale = kdot / k2;
        out.comp[0][i] -= ws.frequency(0)[i] * scale;
        out.comp[1][i] -= ws.frequency(1)[i] * scale;
        out.comp[2][i] -= ws.frequency(2)[i] * scale;
    }
    return out;
}

SpectralField advective_term(const SpectralField& u) {
    AdvectionWorkspace ws(u.grid);
    return advective_term(u, ws);
}

SpectralField advective_term_direct(const SpectralField& u) {
    const WaveGrid& grid = u.grid;
    const std::size_t n = grid.mode_count();

    // Support of u: wavevectors with a nonzero coefficient.
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i)
        if (coeff_magnitude(u, i) != 0.0)
            support.push_back(i);

    SpectralField out(grid);
    for (std::size_t i = 0; i < n; ++i) {
        const Wavevector k = grid.wavevector_at(i);
        if (!in_dealias_mask(grid, k) || k == Wavevector{0, 0, 0})
            continue;
        ComplexVec3 sum{Complex(0.0), Complex(0.0), Complex(0.0)};
        for (const std::size_t pi : support) {
            const Wavevector p = grid.wavevector_at(pi);
            const Wavevector q{k[0] - p[0], k[1] - p[1], k[2] - p[2]};
            if (!grid.contains(q))
                continue;
            const std::size_t qi = grid.index_of(q);
            const Complex pdotq = static_cast<double>(q[0]) * u.comp[0][pi] +
                                  static_cast<double>(q[1]) * u.comp[1][pi] +
                                  static_cast<double>(q[2]) * u.comp[2][pi];
            const Complex factor = Complex(0.0, 1.0) * pdotq;
            sum[0] += factor * u.comp[0][qi];
            sum[1] += factor * u.comp[1][qi];
            sum[2] += factor * u.comp[2][qi];
        }
        out.set(i, sum);
    }
    return leray_project(out);
}

SpectralField galerkin_truncate(const SpectralField& u, double n) {
    SpectralField out = u;
    const double threshold = n * n;
    const std::size_t count = u.grid.mode_count();
    for (std::size_t i = 0; i < count; ++i) {
        const double k2 = static_cast<double>(WaveGrid::squared_norm(u.grid.wavevector_at(i)));
        if (k2 > threshold)
            out.set(i, {Complex(0.0), Complex(0.0), Complex(0.0)});
    }
    return out;
}

double max_pointwise_speed(const SpectralField& u, AdvectionWorkspace& ws) {
    const std::size_t n = u.grid.mode_count();
    for (int c = 0; c < 3; ++c) {
        ws.synthesize_to_buffer(u.comp[c]);
        std::copy(ws.buffer(), ws.buffer() + n, ws.velocity(c).begin());
    }
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double speed2 =
            std::norm(ws.velocity(0)[i]) + std::norm(ws.velocity(1)[i]) + std::norm(ws.velocity(2)[i]);
        sup = std::max(sup, speed2);
    }
    return std::sqrt(sup);
}

double max_pointwise_speed(const SpectralField& u) {
    AdvectionWorkspace ws(u.grid);
    return max_pointwise_speed(u, ws);
}

} // namespace tns
