#pragma once

#include "apspec/transfer.hpp"

namespace aps {

struct LyapunovEstimate {
    double energy = 0;
    double l_disc = 0;       // per-symbol exponent at the requested level
    double mean_length = 1;  // s, frequency-weighted piece length
    double l = 0;            // per-unit-length exponent, l_disc / s
    int n_used = 0;
    double residual = 0;  // increment from the level-(n-1) estimate
};

struct UniformityProbe {
    double spread = 0;  // max - min of the per-shift exponents
    double mean = 0;
    std::vector<double> per_shift;
};

inline constexpr int kMaxLyapunovLevel = 30;

/// L_disc = log ||word_matrix(S^n(a))|| / |S^n(a)| with log-scaled products;
/// s comes from the empirical letter frequencies of S^n(a).
LyapunovEstimate lyapunov_estimate(const Model& model, double E, int n);

/// Per-symbol exponents over length-|S^n(a)| windows at `shifts` evenly
/// spaced offsets into S^{n+3}(a).
UniformityProbe uniformity_probe(const Model& model, double E, int n, int shifts);

}  // namespace aps
