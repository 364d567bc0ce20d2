#pragma once

namespace tns {

/// Exact number of integer lattice points k in Z^3 with |k| <= m (k=0 included).
/// Membership is decided on the integer |k|^2 against m*m.
long long lattice_count(double m);

struct LatticeTail {
    /// Exact sum of |k|^-4 over m < |k| <= R with R = max(100, 10m).
    double value;
    /// Analytic bound on the mass beyond R; the true infinite tail lies in
    /// [value, value + remainder_bound].
    double remainder_bound;
};

LatticeTail lattice_tail(double m);

/// Same sum with an explicit enumeration radius (calibration / convergence probes).
LatticeTail lattice_tail_with_radius(double m, double radius);

struct LatticeCalibration {
    double c1; ///< sup over real m in [1, m_max] of m * tail_value(m)
    double c2; ///< sup over real m in [1, m_max] of lattice_count(m) / m^3
};

/// Calibrates the two constants from exact lattice sums. The suprema are
/// taken over real cutoffs: both m * tail(m) and count(m)/m^3 are piecewise
/// monotone between consecutive attainable radii sqrt(n), so it suffices to
/// probe the shell boundaries. radius_scale multiplies the per-m enumeration
/// radius max(100, 10m) used inside the tail sums.
LatticeCalibration calibrate_lattice_constants(double m_max = 64.0, double radius_scale = 1.0);

} // namespace tns
