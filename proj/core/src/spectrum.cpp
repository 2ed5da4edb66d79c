#include "apspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "apspec/subshift.hpp"

namespace aps {

namespace {

double edge_tolerance(double e) { return 1e-12 * std::max(1.0, std::fabs(e)); }

double logsumexp(const std::vector<double>& xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

class TraceEvaluator {
  public:
    TraceEvaluator(const Model& model, int n) : model_(model), n_(n) {}

    long double operator()(double e) const {
        auto init = detail::initial_conditions_t<long double>(model_, (long double)e);
        return detail::trace_value(init, n_);
    }
    double abs_minus_one(double e) const {
        long double x = (*this)(e);
        if (std::isinf((double)x)) return std::numeric_limits<double>::infinity();
        return (double)(std::fabs(x) - 1.0L);
    }

    const Model& model_;
    int n_;
};

/// Bisect f to a sign change between lo (f(lo) known) and hi.
template <class F>
double bisect(F&& f, double lo, double hi, double flo) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (std::fabs(hi - lo) <= edge_tolerance(mid)) break;
        double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section minimum of f on [lo, hi].
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 160 && (b - a) > edge_tolerance(0.5 * (a + b)); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace

SpectralCover band_spectrum(const Model& model, int n, double e_min, double e_max,
                            double probes_per_oscillation) {
    if (n < 0 || n > kMaxBandLevel)
        throw std::invalid_argument("band level outside [0, " + std::to_string(kMaxBandLevel) +
                                    "]");
    if (!(e_min < e_max)) throw std::invalid_argument("empty energy window");

    TraceEvaluator x(model, n);
    auto g = [&](double e) { return x.abs_minus_one(e); };

    SpectralCover cover;
    cover.level = n;
    cover.e_min = e_min;
    cover.e_max = e_max;

    auto add_band = [&](std::vector<Band>& dst, double lo, double hi, bool tangency) {
        if (lo > hi) std::swap(lo, hi);
        Band b;
        b.e_lo = lo;
        b.e_hi = hi;
        b.level = n;
        b.tangency = tangency;
        b.edge_residual_lo = g(lo);
        b.edge_residual_hi = g(hi);
        double w = b.width();
        double rtol = edge_tolerance(0.5 * (lo + hi));
        if (w > 8 * rtol) {
            b.resolved = true;
            b.log_width = std::log(w);
        } else {
            // width below bisection resolution: 2/|x_n'| at the band center
            b.resolved = false;
            auto [val, deriv] =
                detail::trace_value_and_derivative(model, (long double)(0.5 * (lo + hi)), n);
            (void)val;
            long double ad = std::fabs(deriv);
            if (ad > 0 && std::isfinite((double)std::log(ad)))
                b.log_width = std::log(2.0) - (double)std::log(ad);
            else
                b.log_width = std::log(std::max(w, rtol));
        }
        dst.push_back(b);
    };

    // post-hoc probe: five Chebyshev points per resolved band must stay inside;
    // a point that lands outside sits in a gap the scan grid stepped over
    auto probe_fail = [&](const Band& b) -> std::optional<double> {
        if (!b.resolved || b.tangency) return std::nullopt;
        double c = 0.5 * (b.e_lo + b.e_hi), r = 0.5 * b.width();
        if (r <= edge_tolerance(c)) return std::nullopt;
        for (int k = 0; k < 5; ++k) {
            double e = c + r * std::cos((2 * k + 1) * M_PI / 10.0);
            if (g(e) > 1e-9) return e;
        }
        return std::nullopt;
    };

    // Split a merged candidate at the offending probe point: bisect from the
    // gap interior out to both gap edges and re-emit the two halves.
    std::function<void(double, double, int)> emit = [&](double lo, double hi, int depth) {
        std::vector<Band> one;
        add_band(one, lo, hi, false);
        const Band& b = one.front();
        auto bad = probe_fail(b);
        if (!bad) {
            cover.bands.push_back(b);
            return;
        }
        if (depth >= 64) throw ResolutionError("grid too coarse at level " + std::to_string(n));
        double g_bad = g(*bad);
        double gap_lo = bisect(g, *bad, lo, g_bad);
        double gap_hi = bisect(g, *bad, hi, g_bad);
        if (gap_lo > lo + edge_tolerance(lo)) emit(lo, gap_lo, depth + 1);
        if (gap_hi < hi - edge_tolerance(hi)) emit(gap_hi, hi, depth + 1);
    };

    auto scan = [&](double w_lo, double w_hi, std::size_t npts) {
        EnergyGrid grid = EnergyGrid::uniform(w_lo, w_hi, npts + 1);
        std::vector<long double> xs(grid.points.size());
        for (std::size_t i = 0; i < grid.points.size(); ++i) xs[i] = x(grid.points[i]);

        auto inside = [&](std::size_t i) { return std::fabs((double)xs[i]) <= 1.0; };

        std::vector<Band> found;
        const std::size_t last = grid.points.size() - 1;
        std::size_t i = 0;
        while (i <= last) {
            if (inside(i)) {
                std::size_t j = i;
                while (j < last && inside(j + 1)) ++j;
                double lo = (i == 0) ? grid.points[0]
                                     : bisect(g, grid.points[i], grid.points[i - 1],
                                              g(grid.points[i]));
                double hi = (j == last) ? grid.points[last]
                                        : bisect(g, grid.points[j], grid.points[j + 1],
                                                 g(grid.points[j]));
                add_band(found, lo, hi, false);
                i = j + 1;
            } else {
                if (i < last && !inside(i + 1)) {
                    double a = grid.points[i], bpt = grid.points[i + 1];
                    if ((xs[i] > 0) != (xs[i + 1] > 0)) {
                        // band hidden inside one cell: locate the zero of x_n first
                        auto xv = [&](double e) { return (double)x(e); };
                        double e0 = bisect(xv, a, bpt, xv(a));
                        double lo = bisect(g, e0, a, g(e0));
                        double hi = bisect(g, e0, bpt, g(e0));
                        add_band(found, lo, hi, false);
                    } else if (std::min(std::fabs((double)xs[i]),
                                        std::fabs((double)xs[i + 1])) < 2.0) {
                        // possible tangency or narrow dip without a sign change
                        bool interior_min =
                            i > 0 && i + 1 < last &&
                            std::fabs((double)xs[i]) <= std::fabs((double)xs[i - 1]) &&
                            std::fabs((double)xs[i + 1]) <= std::fabs((double)xs[i + 2]);
                        if (interior_min) {
                            auto [em, gm] = golden_min(g, a, bpt);
                            if (gm <= 0) {
                                double lo = bisect(g, em, a, gm);
                                double hi = bisect(g, em, bpt, gm);
                                add_band(found, lo, hi, false);
                            } else if (gm <= 1e-9) {
                                add_band(found, em, em, true);
                            }
                        }
                    }
                }
                ++i;
            }
        }

        for (const Band& b : found) {
            if (b.tangency || !b.resolved)
                cover.bands.push_back(b);
            else
                emit(b.e_lo, b.e_hi, 0);
        }
    };

    // x_n oscillates ~F_{n+2} times per free period; resolve each oscillation.
    auto osc = static_cast<double>(fibonacci_number(n + 2));
    auto npts = static_cast<std::size_t>(
        std::max(1000.0, std::ceil(probes_per_oscillation * osc)));
    scan(e_min, e_max, npts);

    std::sort(cover.bands.begin(), cover.bands.end(),
              [](const Band& a, const Band& b) { return a.e_lo < b.e_lo; });

    cover.total_measure = 0;
    for (const Band& b : cover.bands)
        cover.total_measure += b.resolved ? b.width() : std::exp(b.log_width);
    return cover;
}

SpectralCover cover_union(const SpectralCover& a, const SpectralCover& b) {
    SpectralCover out;
    out.level = std::min(a.level, b.level);
    out.e_min = std::min(a.e_min, b.e_min);
    out.e_max = std::max(a.e_max, b.e_max);

    std::vector<Band> all = a.bands;
    all.insert(all.end(), b.bands.begin(), b.bands.end());
    std::sort(all.begin(), all.end(), [](const Band& x, const Band& y) { return x.e_lo < y.e_lo; });

    for (const Band& band : all) {
        if (!out.bands.empty() && band.e_lo <= out.bands.back().e_hi) {
            Band& prev = out.bands.back();
            prev.e_hi = std::max(prev.e_hi, band.e_hi);
            prev.edge_residual_hi = band.edge_residual_hi;
            double w = prev.width();
            if (w > 8 * edge_tolerance(0.5 * (prev.e_lo + prev.e_hi))) {
                prev.resolved = true;
                prev.log_width = std::log(w);
            } else {
                prev.resolved = prev.resolved && band.resolved;
                prev.log_width = logsumexp({prev.log_width, band.log_width});
            }
            prev.tangency = prev.tangency && band.tangency;
        } else {
            out.bands.push_back(band);
        }
    }
    out.total_measure = 0;
    for (const Band& band : out.bands)
        out.total_measure += band.resolved ? band.width() : std::exp(band.log_width);
    return out;
}

ClassifiedGrid classify_grid(const Model& model, const EnergyGrid& grid, int n_max) {
    ClassifiedGrid out;
    out.grid = grid;
    out.n_max = n_max;
    out.points.reserve(grid.points.size());
    for (double e : grid.points) {
        OrbitRecord rec = trace_recursion(model, e, n_max);
        ClassifiedPoint p;
        p.energy = e;
        p.invariant = rec.invariant;
        if (rec.escape_index) {
            p.cls = PointClass::Escaped;
            p.escape_index = *rec.escape_index;
        } else if (rec.undetermined) {
            p.cls = PointClass::Undetermined;
        } else {
            p.cls = PointClass::NotEscapedBy;
        }
        out.points.push_back(p);
    }
    return out;
}

std::vector<std::pair<int, double>> cover_measure_sequence(const Model& model, double e_min,
                                                           double e_max,
                                                           const std::vector<int>& levels) {
    std::vector<std::pair<int, double>> out;
    out.reserve(levels.size());
    for (int n : levels) {
        auto cover = cover_union(band_spectrum(model, n, e_min, e_max),
                                 band_spectrum(model, n + 1, e_min, e_max));
        out.emplace_back(n, cover.total_measure);
    }
    return out;
}

double box_dimension_estimate(const Model& model, double e_min, double e_max, int n1, int n2,
                              double probes_per_oscillation) {
    if (n2 <= n1) throw std::invalid_argument("need n2 > n1");

    auto cover_at = [&](int n) {
        return cover_union(band_spectrum(model, n, e_min, e_max, probes_per_oscillation),
                           band_spectrum(model, n + 1, e_min, e_max, probes_per_oscillation));
    };
    SpectralCover c1 = cover_at(n1), c2 = cover_at(n2);
    if (c1.bands.empty() || c2.bands.empty())
        throw ResolutionError("insufficient resolution: no bands in window");

    auto log_mean_width = [](const SpectralCover& c) {
        std::vector<double> lw;
        lw.reserve(c.bands.size());
        for (const Band& b : c.bands) lw.push_back(b.log_width);
        return logsumexp(lw) - std::log(static_cast<double>(c.bands.size()));
    };
    double le1 = log_mean_width(c1), le2 = log_mean_width(c2);
    auto n1c = static_cast<double>(c1.bands.size());
    auto n2c = static_cast<double>(c2.bands.size());

    if (c1.bands.size() == c2.bands.size() && std::fabs(le1 - le2) < 1e-9) return 1.0;
    double denom = le1 - le2;
    if (std::fabs(denom) < 1e-9)
        throw ResolutionError("insufficient resolution: covers do not refine");
    double d = std::log(n2c / n1c) / denom;
    return std::clamp(d, 0.0, 1.0);
}

}  // namespace aps
