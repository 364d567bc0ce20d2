#include "tns/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace tns {
namespace {

constexpr double kPi = 3.14159265358979323846;

// floor(sqrt(t)) for t >= 0, exact on integer-valued doubles below 2^53.
long long isqrt_floor(double t) {
    if (t < 0.0)
        return -1;
    long long r = static_cast<long long>(std::sqrt(t));
    while (static_cast<double>((r + 1) * (r + 1)) <= t)
        ++r;
    while (r > 0 && static_cast<double>(r * r) > t)
        --r;
    return r;
}

// Per-shell data for |k|^2 <= n_max, built by one octant sweep.
class ShellTable {
  public:
    explicit ShellTable(long long n_max) : n_max_(n_max), shell_count_(n_max + 1, 0) {
        const long long imax = isqrt_floor(static_cast<double>(n_max));
        for (long long i = 0; i <= imax; ++i) {
            const int wi = i ? 2 : 1;
            const long long ti = n_max - i * i;
            const long long jmax = isqrt_floor(static_cast<double>(ti));
            for (long long j = 0; j <= jmax; ++j) {
                const int wij = wi * (j ? 2 : 1);
                const long long base = i * i + j * j;
                const long long lmax = isqrt_floor(static_cast<double>(n_max - base));
                shell_count_[base] += wij;
                for (long long l = 1; l <= lmax; ++l)
                    shell_count_[base + l * l] += 2 * wij;
            }
        }
        // suffix_inv4_[n] = sum_{n <= j <= n_max} r3(j) / j^2
        suffix_inv4_.assign(n_max + 2, 0.0);
        for (long long n = n_max; n >= 1; --n)
            suffix_inv4_[n] = suffix_inv4_[n + 1] +
                              static_cast<double>(shell_count_[n]) / (static_cast<double>(n) * static_cast<double>(n));
    }

    long long n_max() const { return n_max_; }
    std::uint32_t shell_count(long long n) const { return shell_count_[n]; }

    /// sum of |k|^-4 over m^2 < |k|^2 <= r^2 (both thresholds as doubles).
    double tail_range(double m_sq, double r_sq) const {
        long long lo = static_cast<long long>(std::floor(m_sq)) + 1;
        long long hi = static_cast<long long>(std::floor(r_sq));
        lo = std::max(lo, 1LL);
        hi = std::min(hi, n_max_);
        if (lo > hi)
            return 0.0;
        return suffix_inv4_[lo] - suffix_inv4_[hi + 1];
    }

  private:
    long long n_max_;
    std::vector<std::uint32_t> shell_count_;
    std::vector<double> suffix_inv4_;
};

std::shared_ptr<const ShellTable> shared_shell_table(long long n_max_needed) {
    static std::mutex mtx;
    static std::shared_ptr<const ShellTable> table;
    std::lock_guard<std::mutex> lock(mtx);
    if (!table || table->n_max() < n_max_needed)
        table = std::make_shared<const ShellTable>(n_max_needed);
    return table;
}

double enumeration_radius(double m) { return std::max(100.0, 10.0 * m); }

// Every lattice point with |k| > R owns a unit cube inside {|x| > R - sqrt(3)/2}
// on which |k|^-4 <= (|x| - sqrt(3)/2)^-4; integrating over shells gives, with
// S = R - sqrt(3),  4*pi*(1/S + sqrt(3)/(2 S^2) + 1/(4 S^3)).
double tail_remainder_bound(double radius) {
    const double s = radius - std::sqrt(3.0);
    return 4.0 * kPi * (1.0 / s + std::sqrt(3.0) / (2.0 * s * s) + 1.0 / (4.0 * s * s * s));
}

} // namespace

long long lattice_count(double m) {
    if (!(m > 0.0))
        throw std::invalid_argument("lattice_count: m must be positive");
    const double t = m * m;
    const long long imax = isqrt_floor(t);
    long long count = 0;
    for (long long i = 0; i <= imax; ++i) {
        const int wi = i ? 2 : 1;
        const double ti = t - static_cast<double>(i * i);
        const long long jmax = isqrt_floor(ti);
        for (long long j = 0; j <= jmax; ++j) {
            const int wij = wi * (j ? 2 : 1);
            const long long lmax = isqrt_floor(ti - static_cast<double>(j * j));
            count += static_cast<long long>(wij) * (2 * lmax + 1);
        }
    }
    return count;
}

LatticeTail lattice_tail_with_radius(double m, double radius) {
    if (!(m > 0.0))
        throw std::invalid_argument("lattice_tail: m must be positive");
    if (!(radius > m))
        throw std::invalid_argument("lattice_tail: radius must exceed m");
    const long long n_max = static_cast<long long>(std::floor(radius * radius));
    const auto table = shared_shell_table(n_max);
    return {table->tail_range(m * m, radius * radius), tail_remainder_bound(radius)};
}

LatticeTail lattice_tail(double m) { return lattice_tail_with_radius(m, enumeration_radius(m)); }

LatticeCalibration calibrate_lattice_constants(double m_max, double radius_scale) {
    if (!(m_max >= 1.0) || !(radius_scale > 0.0))
        throw std::invalid_argument("calibrate_lattice_constants: need m_max >= 1 and radius_scale > 0");

    const double r_hist = radius_scale * enumeration_radius(m_max);
    const long long n_hist = static_cast<long long>(std::floor(r_hist * r_hist));
    const auto table = shared_shell_table(n_hist);
    const long long n_sweep = static_cast<long long>(std::floor(m_max * m_max));

    // c2: count(m)/m^3 is decreasing between attainable radii, so its sup sits
    // at the left shell boundary where the count has just jumped.
    double c2 = 0.0;
    long long cumulative = 1; // k = 0
    for (long long n = 1; n <= n_sweep; ++n) {
        cumulative += table->shell_count(n);
        if (table->shell_count(n) == 0)
            continue;
        c2 = std::max(c2, static_cast<double>(cumulative) / std::pow(static_cast<double>(n), 1.5));
    }

    // c1: m * tail(m) is increasing in m between attainable radii, so its sup
    // is approached just below each shell boundary sqrt(n), where the ball
    // still excludes shell n.
    double c1 = 0.0;
    for (long long n = 2; n <= n_sweep; ++n) {
        if (table->shell_count(n) == 0)
            continue;
        const double r = std::sqrt(static_cast<double>(n));
        const double radius = radius_scale * enumeration_radius(r);
        c1 = std::max(c1, r * table->tail_range(static_cast<double>(n) - 0.5, radius * radius));
    }
    const double end_radius = radius_scale * enumeration_radius(m_max);
    c1 = std::max(c1, m_max * table->tail_range(m_max * m_max, end_radius * end_radius));

    return {c1, c2};
}

} // namespace tns
