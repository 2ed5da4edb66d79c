#include "apspec/lyapunov.hpp"

#include <cmath>
#include <stdexcept>

#include "apspec/subshift.hpp"

namespace aps {

namespace {

double per_symbol_exponent(const Model& model, const std::string& symbols, double E) {
    Word w{symbols, -1};
    ScaledMatrix m = word_matrix(model, w, E);
    return m.log_norm() / static_cast<double>(symbols.size());
}

}  // namespace

LyapunovEstimate lyapunov_estimate(const Model& model, double E, int n) {
    if (n < 1 || n > kMaxLyapunovLevel)
        throw std::invalid_argument("Lyapunov level outside [1, " +
                                    std::to_string(kMaxLyapunovLevel) + "]");

    Word word = iterate_substitution(model.substitution, model.letter_a, n);
    WordStatistics stats =
        letter_frequencies(model.substitution, model.letter_a, n, model.lengths());

    LyapunovEstimate est;
    est.energy = E;
    est.n_used = n;
    est.l_disc = per_symbol_exponent(model, word.symbols, E);
    est.mean_length = stats.mean_length;
    est.l = est.l_disc / est.mean_length;
    if (n >= 2) {
        Word prev = iterate_substitution(model.substitution, model.letter_a, n - 1);
        est.residual = est.l_disc - per_symbol_exponent(model, prev.symbols, E);
    }
    return est;
}

UniformityProbe uniformity_probe(const Model& model, double E, int n, int shifts) {
    if (shifts < 2) throw std::invalid_argument("need at least 2 shifts");
    Word window = iterate_substitution(model.substitution, model.letter_a, n);
    Word host = iterate_substitution(model.substitution, model.letter_a, n + 3);
    const std::size_t wl = window.size();
    const std::size_t span = host.size() - wl;

    UniformityProbe probe;
    probe.per_shift.reserve(static_cast<std::size_t>(shifts));
    for (int k = 0; k < shifts; ++k) {
        std::size_t off = span * static_cast<std::size_t>(k) /
                          static_cast<std::size_t>(shifts - 1);
        probe.per_shift.push_back(
            per_symbol_exponent(model, host.symbols.substr(off, wl), E));
    }
    double lo = probe.per_shift[0], hi = probe.per_shift[0], sum = 0;
    for (double v : probe.per_shift) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    probe.spread = hi - lo;
    probe.mean = sum / static_cast<double>(probe.per_shift.size());
    return probe;
}

}  // namespace aps
