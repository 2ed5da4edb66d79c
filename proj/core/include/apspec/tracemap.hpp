#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "apspec/transfer.hpp"

namespace aps {

/// Point (x_{n+1}, x_n, x_{n-1}) of the trace-map orbit.
struct TraceTriple {
    double x_next = 0, x_cur = 0, x_prev = 0;
};

/// T(x, y, z) = (2xy - z, x, y)
TraceTriple trace_map_step(const TraceTriple& p);

/// T^{-1}(x, y, z) = (y, z, 2yz - x)
TraceTriple trace_map_inverse(const TraceTriple& p);

/// I(x, y, z) = x^2 + y^2 + z^2 - 2xyz - 1, evaluated in the algebraically
/// equivalent form (x - yz)^2 - (y^2 - 1)(z^2 - 1) which avoids the worst
/// cancellation for near-invariant-zero points.
double fricke_vogt(const TraceTriple& p);

/// (x_1, x_0, x_{-1}) = (tr(M_b M_a)/2, tr(M_a)/2, tr(M_b)/2) for the model's
/// designated letters. Refuses non-Fibonacci substitutions.
TraceTriple initial_conditions(const Model& model, double E);

/// I(E) along the curve of initial conditions, computed in extended
/// precision internally (the double pipeline loses ~1e-9 absolute accuracy
/// once cosh factors reach 10^3, e.g. the free case at E = -20).
double invariant_at(const Model& model, double E);

inline constexpr int kMaxTraceSteps = 200;
inline constexpr double kEscapeGuard = 1e-12;
inline constexpr double kLogSwitchThreshold = 1e100;

struct OrbitRecord {
    TraceTriple initial;
    double invariant = 0;
    std::vector<TraceTriple> steps;  // steps[n] = (x_{n+1}, x_n, x_{n-1})
    std::optional<int> escape_index;
    bool undetermined = false;  // escape test landed inside the guard band
    /// Once |x| passes kLogSwitchThreshold the recursion continues in the
    /// log domain; log_magnitudes[k] = log|x_{log_start + k}|.
    std::vector<double> log_magnitudes;
    int log_start = -1;
};

/// Iterates the scalar recursion x_{n+1} = 2 x_n x_{n-1} - x_{n-2} from the
/// initial triple, recording the first step where the escape criterion
/// |x_{n+1}| > 1, |x_n| > 1, |x_{n+1} x_n| > |x_{n-1}| holds.
OrbitRecord trace_recursion(const Model& model, double E, int n_max);

namespace detail {

template <class Real>
struct TripleT {
    Real x1, x0, xm1;
};

template <class Real>
TripleT<Real> initial_conditions_t(const Model& model, Real E) {
    auto ma = piece_matrix_t(model.piece(model.letter_a), E);
    auto mb = piece_matrix_t(model.piece(model.letter_b), E);
    auto prod = mb * ma;
    return {prod.trace() / Real(2), ma.trace() / Real(2), mb.trace() / Real(2)};
}

/// x_n for n >= -1 via the scalar recursion.
template <class Real>
Real trace_value(const TripleT<Real>& t, int n) {
    if (n == -1) return t.xm1;
    if (n == 0) return t.x0;
    Real a = t.x1, b = t.x0, c = t.xm1;
    for (int k = 1; k < n; ++k) {
        Real next = Real(2) * a * b - c;
        c = b;
        b = a;
        a = next;
    }
    return a;
}

/// (x_n, dx_n/dE) with the derivative recursion run alongside. Initial
/// derivatives come from central differences of the initial conditions.
std::pair<long double, long double> trace_value_and_derivative(const Model& model,
                                                               long double E, int n);

}  // namespace detail

}  // namespace aps
