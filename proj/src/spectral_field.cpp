#include "tns/spectral_field.hpp"

#include <cmath>
#include <stdexcept>

namespace tns {

SpectralField synthesize(const WaveGrid& grid, const std::vector<std::pair<Wavevector, ComplexVec3>>& modes) {
    SpectralField f(grid);
    std::vector<char> assigned(grid.mode_count(), 0);

    const auto conj3 = [](const ComplexVec3& v) {
        return ComplexVec3{std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
    };
    const auto equal3 = [](const ComplexVec3& a, const ComplexVec3& b) {
        return a[0] == b[0] && a[1] == b[1] && a[2] == b[2];
    };
    const auto zero3 = [](const ComplexVec3& v) {
        return v[0] == Complex(0.0) && v[1] == Complex(0.0) && v[2] == Complex(0.0);
    };

    for (const auto& [k, v] : modes) {
        if (!grid.contains(k))
            throw std::invalid_argument("synthesize: wavevector " + to_string(k) + " outside grid (N=" +
                                        std::to_string(grid.modes_per_axis()) + ")");
        if (k == Wavevector{0, 0, 0}) {
            if (!zero3(v))
                throw std::invalid_argument("synthesize: nonzero mean mode k=(0,0,0) not allowed");
            continue;
        }
        if (grid.is_nyquist(k))
            throw std::invalid_argument("synthesize: wavevector " + to_string(k) +
                                        " lies on a Nyquist plane and cannot carry coefficients");

        const std::size_t idx = grid.index_of(k);
        const std::size_t mir = grid.mirror_index(idx);
        const ComplexVec3 mirrored = conj3(v);
        if (assigned[idx] && !equal3(f.at(idx), v))
            throw std::invalid_argument("synthesize: conflicting mirror entries at " + to_string(k));
        if (assigned[mir] && !equal3(f.at(mir), mirrored))
            throw std::invalid_argument("synthesize: conflicting mirror entries at " + to_string(k));
        f.set(idx, v);
        f.set(mir, mirrored);
        assigned[idx] = 1;
        assigned[mir] = 1;
    }
    return f;
}

SpectralField leray_project(const SpectralField& f) {
    SpectralField out = f;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const Wavevector k = f.grid.wavevector_at(i);
        const long long k2 = WaveGrid::squared_norm(k);
        if (k2 == 0)
            continue;
        const Complex kdot = static_cast<double>(k[0]) * out.comp[0][i] + static_cast<double>(k[1]) * out.comp[1][i] +
                             static_cast<double>(k[2]) * out.comp[2][i];
        const Complex scale = kdot / static_cast<double>(k2);
        out.comp[0][i] -= static_cast<double>(k[0]) * scale;
        out.comp[1][i] -= static_cast<double>(k[1]) * scale;
        out.comp[2][i] -= static_cast<double>(k[2]) * scale;
    }
    return out;
}

double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
    // Two accumulators in one fixed iteration order so that
    // ||u||_{H^s}^2 == ||u||_{L2}^2 + ||u||_{Hdot^s}^2 holds exactly.
    double sum_l2 = 0.0;
    double sum_weighted = 0.0;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double k2 = static_cast<double>(WaveGrid::squared_norm(f.grid.wavevector_at(i)));
        const double mag2 = std::norm(f.comp[0][i]) + std::norm(f.comp[1][i]) + std::norm(f.comp[2][i]);
        sum_l2 += mag2;
        sum_weighted += std::pow(k2, s) * mag2;
    }
    return homogeneous ? std::sqrt(sum_weighted) : std::sqrt(sum_l2 + sum_weighted);
}

MassSplit spectral_mass_split(const SpectralField& f, double m) {
    MassSplit split;
    const double threshold = m * m;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = coeff_magnitude(f, i);
        if (mag == 0.0)
            continue;
        const double k2 = static_cast<double>(WaveGrid::squared_norm(f.grid.wavevector_at(i)));
        if (k2 <= threshold)
            split.low += mag;
        else
            split.high += mag;
    }
    return split;
}

double divergence_sup(const SpectralField& f) {
    double sup = 0.0;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const Wavevector k = f.grid.wavevector_at(i);
        const Complex kdot = static_cast<double>(k[0]) * f.comp[0][i] + static_cast<double>(k[1]) * f.comp[1][i] +
                             static_cast<double>(k[2]) * f.comp[2][i];
        sup = std::max(sup, std::abs(kdot));
    }
    return sup;
}

double max_coeff_magnitude(const SpectralField& f) {
    double sup = 0.0;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i)
        sup = std::max(sup, coeff_magnitude(f, i));
    return sup;
}

double abs_coeff_sum(const SpectralField& f) {
    double sum = 0.0;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i)
        sum += coeff_magnitude(f, i);
    return sum;
}

double inner_product(const SpectralField& f, const SpectralField& g) {
    double sum = 0.0;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c)
            sum += (f.comp[c][i] * std::conj(g.comp[c][i])).real();
    return sum;
}

void enforce_reality(SpectralField& f) {
    const WaveGrid& g = f.grid;
    const std::size_t n = g.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const Wavevector k = g.wavevector_at(i);
        if (k == Wavevector{0, 0, 0} || g.is_nyquist(k)) {
            f.set(i, {Complex(0.0), Complex(0.0), Complex(0.0)});
            continue;
        }
        const std::size_t mir = g.mirror_index(i);
        if (mir <= i)
            continue;
        for (int c = 0; c < 3; ++c) {
            const Complex avg = 0.5 * (f.comp[c][i] + std::conj(f.comp[c][mir]));
            f.comp[c][i] = avg;
            f.comp[c][mir] = std::conj(avg);
        }
    }
}

double hermitian_defect(const SpectralField& f) {
    double defect = 0.0;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t mir = f.grid.mirror_index(i);
        for (int c = 0; c < 3; ++c)
            defect = std::max(defect, std::abs(f.comp[c][mir] - std::conj(f.comp[c][i])));
    }
    return defect;
}

} // namespace tns
