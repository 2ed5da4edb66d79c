#include "apspec/subshift.hpp"

#include <algorithm>
#include <stdexcept>

namespace aps {

bool Alphabet::contains(Letter a) const {
    return std::find(letters.begin(), letters.end(), a) != letters.end();
}

std::size_t Alphabet::index_of(Letter a) const {
    auto it = std::find(letters.begin(), letters.end(), a);
    if (it == letters.end())
        throw std::invalid_argument(std::string("letter not in alphabet: ") + a);
    return static_cast<std::size_t>(it - letters.begin());
}

Substitution Substitution::fibonacci() {
    Substitution s;
    s.rules['a'] = "ab";
    s.rules['b'] = "a";
    return s;
}

namespace {

void validate(const Substitution& sub) {
    if (sub.rules.empty()) throw std::invalid_argument("empty substitution");
    for (const auto& [letter, image] : sub.rules) {
        if (image.empty())
            throw std::invalid_argument(std::string("empty rule image for letter ") + letter);
        for (Letter c : image)
            if (!sub.rules.count(c))
                throw std::invalid_argument(std::string("rule image uses letter without a rule: ") + c);
    }
}

}  // namespace

Word iterate_substitution(const Substitution& sub, Letter seed, int n) {
    validate(sub);
    if (n < 0) throw std::invalid_argument("negative substitution level");
    if (n > kMaxSubstitutionLevel)
        throw std::invalid_argument("substitution level above cap " +
                                    std::to_string(kMaxSubstitutionLevel));
    if (!sub.rules.count(seed))
        throw std::invalid_argument(std::string("unknown seed letter: ") + seed);

    std::string cur(1, seed);
    for (int i = 0; i < n; ++i) {
        std::string next;
        next.reserve(2 * cur.size());
        for (Letter c : cur) next += sub.rules.at(c);
        cur = std::move(next);
    }
    return Word{std::move(cur), n};
}

WordStatistics letter_frequencies(const Substitution& sub, Letter seed, int n,
                                  const std::map<Letter, double>& lengths) {
    Word w = iterate_substitution(sub, seed, n);
    WordStatistics stats;
    std::map<Letter, std::size_t> counts;
    for (Letter c : w.symbols) ++counts[c];
    const double total = static_cast<double>(w.size());
    for (const auto& [letter, _] : sub.rules) stats.frequencies[letter] = 0.0;
    for (const auto& [letter, count] : counts)
        stats.frequencies[letter] = static_cast<double>(count) / total;
    if (!lengths.empty()) {
        for (const auto& [letter, freq] : stats.frequencies)
            stats.mean_length += freq * lengths.at(letter);
    }
    return stats;
}

WordStatistics perron_frequencies(const Substitution& sub,
                                  const std::map<Letter, double>& lengths) {
    validate(sub);
    if (!check_primitivity(sub))
        throw std::invalid_argument("Perron frequencies require a primitive substitution");

    std::vector<Letter> letters;
    for (const auto& [letter, _] : sub.rules) letters.push_back(letter);
    const std::size_t k = letters.size();
    auto idx = [&](Letter c) {
        return static_cast<std::size_t>(
            std::find(letters.begin(), letters.end(), c) - letters.begin());
    };

    // incidence[i][j] = occurrences of letter i in the image of letter j
    std::vector<std::vector<double>> m(k, std::vector<double>(k, 0.0));
    for (std::size_t j = 0; j < k; ++j)
        for (Letter c : sub.rules.at(letters[j])) m[idx(c)][j] += 1.0;

    // Letter frequencies are the normalized right Perron vector of the
    // transpose (frequency vector is stationary under v -> M^T v / |.|).
    std::vector<double> v(k, 1.0 / static_cast<double>(k));
    for (int it = 0; it < 200; ++it) {
        std::vector<double> next(k, 0.0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) next[j] += m[i][j] * v[i];
        double sum = 0.0;
        for (double x : next) sum += x;
        for (double& x : next) x /= sum;
        v = std::move(next);
    }

    WordStatistics stats;
    for (std::size_t i = 0; i < k; ++i) stats.frequencies[letters[i]] = v[i];
    if (!lengths.empty())
        for (const auto& [letter, freq] : stats.frequencies)
            stats.mean_length += freq * lengths.at(letter);
    return stats;
}

bool check_primitivity(const Substitution& sub) {
    validate(sub);
    std::vector<Letter> letters;
    for (const auto& [letter, _] : sub.rules) letters.push_back(letter);
    const std::size_t k = letters.size();
    auto idx = [&](Letter c) {
        return static_cast<std::size_t>(
            std::find(letters.begin(), letters.end(), c) - letters.begin());
    };

    // Work with a boolean reachability matrix; saturating avoids overflow.
    std::vector<std::vector<bool>> m(k, std::vector<bool>(k, false));
    for (std::size_t j = 0; j < k; ++j)
        for (Letter c : sub.rules.at(letters[j])) m[idx(c)][j] = true;

    auto positive = [&](const std::vector<std::vector<bool>>& a) {
        for (const auto& row : a)
            for (bool x : row)
                if (!x) return false;
        return true;
    };

    std::vector<std::vector<bool>> p = m;
    const std::size_t max_power = k * k;
    for (std::size_t power = 1; power <= max_power; ++power) {
        if (positive(p)) return true;
        std::vector<std::vector<bool>> next(k, std::vector<bool>(k, false));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l)
                if (p[i][l])
                    for (std::size_t j = 0; j < k; ++j)
                        if (m[l][j]) next[i][j] = true;
        p = std::move(next);
    }
    return false;
}

std::uint64_t fibonacci_number(int n) {
    if (n < 1) throw std::invalid_argument("Fibonacci index must be >= 1");
    std::uint64_t a = 1, b = 1;
    for (int i = 2; i < n; ++i) {
        std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return n == 1 ? a : b;
}

}  // namespace aps
