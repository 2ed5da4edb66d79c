#include "apspec/tracemap.hpp"

#include <cmath>
#include <stdexcept>

namespace aps {

TraceTriple trace_map_step(const TraceTriple& p) {
    return {2.0 * p.x_next * p.x_cur - p.x_prev, p.x_next, p.x_cur};
}

TraceTriple trace_map_inverse(const TraceTriple& p) {
    return {p.x_cur, p.x_prev, 2.0 * p.x_cur * p.x_prev - p.x_next};
}

double fricke_vogt(const TraceTriple& p) {
    double x = p.x_next, y = p.x_cur, z = p.x_prev;
    double d = x - y * z;
    return d * d - (y * y - 1.0) * (z * z - 1.0);
}

namespace {

void require_fibonacci(const Model& model) {
    const auto& rules = model.substitution.rules;
    auto a = rules.find(model.letter_a);
    auto b = rules.find(model.letter_b);
    bool fib = a != rules.end() && b != rules.end() &&
               a->second == std::string{model.letter_a, model.letter_b} &&
               b->second == std::string{model.letter_a};
    if (!fib)
        throw std::invalid_argument(
            "trace-map initial conditions are defined for the Fibonacci substitution only");
}

}  // namespace

TraceTriple initial_conditions(const Model& model, double E) {
    require_fibonacci(model);
    if (!std::isfinite(E)) throw std::invalid_argument("non-finite energy");
    auto t = detail::initial_conditions_t<double>(model, E);
    return {t.x1, t.x0, t.xm1};
}

double invariant_at(const Model& model, double E) {
    require_fibonacci(model);
    if (!std::isfinite(E)) throw std::invalid_argument("non-finite energy");
    using R = detail::HighReal;
    auto t = detail::initial_conditions_t<R>(model, R(E));
    R d = t.x1 - t.x0 * t.xm1;
    R inv = d * d - (t.x0 * t.x0 - R(1)) * (t.xm1 * t.xm1 - R(1));
    return static_cast<double>(inv);
}

OrbitRecord trace_recursion(const Model& model, double E, int n_max) {
    if (n_max < 0 || n_max > kMaxTraceSteps)
        throw std::invalid_argument("n_max outside [0, " + std::to_string(kMaxTraceSteps) + "]");

    OrbitRecord rec;
    rec.initial = initial_conditions(model, E);
    rec.invariant = invariant_at(model, E);
    rec.steps.reserve(static_cast<std::size_t>(n_max) + 1);
    rec.steps.push_back(rec.initial);

    auto check_escape = [&](int n, double next, double cur, double prev) {
        if (rec.escape_index) return;
        double an = std::fabs(next), ac = std::fabs(cur), ap = std::fabs(prev);
        if (an > 1.0 + kEscapeGuard && ac > 1.0 + kEscapeGuard && an * ac > ap * (1.0 + kEscapeGuard)) {
            rec.escape_index = n;
        } else if (an > 1.0 - kEscapeGuard && ac > 1.0 - kEscapeGuard && an * ac > ap * (1.0 - kEscapeGuard)) {
            rec.undetermined = true;  // inside the guard band at level n
        }
    };

    check_escape(0, rec.initial.x_next, rec.initial.x_cur, rec.initial.x_prev);

    double x2 = rec.initial.x_prev;  // x_{n-2}
    double x1 = rec.initial.x_cur;   // x_{n-1}
    double x0 = rec.initial.x_next;  // x_n
    bool log_mode = false;
    double l0 = 0, l1 = 0;  // log|x_n|, log|x_{n-1}| once in log mode

    for (int n = 1; n <= n_max; ++n) {
        if (!log_mode) {
            double next = 2.0 * x0 * x1 - x2;
            if (std::fabs(next) > kLogSwitchThreshold) {
                log_mode = true;
                rec.log_start = n;
                l1 = std::log(std::max(std::fabs(x0), 1.0));
                l0 = std::log(std::fabs(next));
                rec.log_magnitudes.push_back(l0);
                if (!rec.escape_index) rec.escape_index = n;  // growth this size is escape
                continue;
            }
            check_escape(n, next, x0, x1);
            x2 = x1;
            x1 = x0;
            x0 = next;
            rec.steps.push_back({x0, x1, x2});
        } else {
            // doubly exponential regime: log|x_{n+1}| ~ log 2 + log|x_n| + log|x_{n-1}|
            double lnext = std::log(2.0) + l0 + l1;
            l1 = l0;
            l0 = lnext;
            rec.log_magnitudes.push_back(l0);
        }
    }
    return rec;
}

namespace detail {

std::pair<long double, long double> trace_value_and_derivative(const Model& model,
                                                               long double E, int n) {
    // central differences for the initial-condition derivatives
    long double h = 1e-7L * std::max<long double>(1.0L, std::fabs(E));
    auto tp = initial_conditions_t<long double>(model, E + h);
    auto tm = initial_conditions_t<long double>(model, E - h);
    auto t = initial_conditions_t<long double>(model, E);
    TripleT<long double> d{(tp.x1 - tm.x1) / (2 * h), (tp.x0 - tm.x0) / (2 * h),
                           (tp.xm1 - tm.xm1) / (2 * h)};

    if (n == -1) return {t.xm1, d.xm1};
    if (n == 0) return {t.x0, d.x0};

    long double a = t.x1, b = t.x0, c = t.xm1;
    long double da = d.x1, db = d.x0, dc = d.xm1;
    for (int k = 1; k < n; ++k) {
        long double next = 2 * a * b - c;
        long double dnext = 2 * (da * b + a * db) - dc;
        c = b;
        b = a;
        a = next;
        dc = db;
        db = da;
        da = dnext;
    }
    return {a, da};
}

}  // namespace detail

}  // namespace aps
