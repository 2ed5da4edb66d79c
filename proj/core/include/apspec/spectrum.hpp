#pragma once

#include <stdexcept>
#include <vector>

#include "apspec/tracemap.hpp"

namespace aps {

/// Raised when a band search cannot resolve the oscillations of x_n on the
/// requested window (CLI exit code 3).
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Closed energy interval with |x_n| <= 1 at approximant level n.
struct Band {
    double e_lo = 0, e_hi = 0;
    int level = 0;
    double edge_residual_lo = 0, edge_residual_hi = 0;  // |x_n(edge)| - 1
    bool tangency = false;  // double root, kept as a zero-length band
    /// Bands narrower than the bisection resolution keep a derivative-based
    /// width estimate 2/|x_n'| in log form; resolved bands store log(e_hi - e_lo).
    bool resolved = true;
    double log_width = 0;

    double width() const { return e_hi - e_lo; }
};

struct SpectralCover {
    int level = 0;
    double e_min = 0, e_max = 0;
    std::vector<Band> bands;  // sorted, pairwise disjoint
    double total_measure = 0;
};

enum class PointClass { Escaped, NotEscapedBy, Undetermined };

struct ClassifiedPoint {
    double energy = 0;
    PointClass cls = PointClass::NotEscapedBy;
    int escape_index = -1;  // valid when Escaped
    double invariant = 0;
};

struct ClassifiedGrid {
    EnergyGrid grid;
    int n_max = 0;
    std::vector<ClassifiedPoint> points;
};

inline constexpr int kMaxBandLevel = 25;
inline constexpr double kDefaultProbesPerOscillation = 50.0;

/// All maximal intervals with |x_n(E)| <= 1 inside the window. The initial
/// grid spacing is (window width) / (probes_per_oscillation * F_{n+2});
/// edges are bisected to |dE| <= 1e-12 max(1, |E|).
SpectralCover band_spectrum(const Model& model, int n, double e_min, double e_max,
                            double probes_per_oscillation = kDefaultProbesPerOscillation);

/// sigma_n union sigma_{n+1}, the canonical cover at level n.
SpectralCover cover_union(const SpectralCover& a, const SpectralCover& b);

ClassifiedGrid classify_grid(const Model& model, const EnergyGrid& grid, int n_max);

/// (n, Lebesgue measure of sigma_n union sigma_{n+1} within the window).
std::vector<std::pair<int, double>> cover_measure_sequence(const Model& model, double e_min,
                                                           double e_max,
                                                           const std::vector<int>& levels);

/// Two-level slope estimate log(N2/N1) / log(eps1/eps2) over the covers at
/// levels n1 < n2, clamped to [0, 1]. Identical covers give 1.0; empty or
/// degenerate covers raise ResolutionError.
double box_dimension_estimate(const Model& model, double e_min, double e_max, int n1, int n2,
                              double probes_per_oscillation = kDefaultProbesPerOscillation);

}  // namespace aps
