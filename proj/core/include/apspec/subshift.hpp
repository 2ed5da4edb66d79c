#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace aps {

using Letter = char;

/// Ordered finite alphabet. Aperiodic models need at least two letters,
/// but single-letter (periodic) alphabets are accepted for degenerate cases.
struct Alphabet {
    std::vector<Letter> letters;

    bool contains(Letter a) const;
    std::size_t index_of(Letter a) const;  // throws if absent
    std::size_t size() const { return letters.size(); }
};

/// Substitution rule: each letter maps to a non-empty word.
struct Substitution {
    std::map<Letter, std::string> rules;

    /// a -> ab, b -> a
    static Substitution fibonacci();
};

struct Word {
    std::string symbols;
    int level = -1;  // generation index, -1 when not produced by iteration

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
};

struct WordStatistics {
    std::map<Letter, double> frequencies;
    double mean_length = 0.0;  // sum of length_a * freq(a); 0 when no lengths given
};

/// Words above this substitution level are refused (Fibonacci length 3,524,578).
inline constexpr int kMaxSubstitutionLevel = 32;

/// S^n(seed). Throws std::invalid_argument for an unknown seed letter or
/// n above kMaxSubstitutionLevel.
Word iterate_substitution(const Substitution& sub, Letter seed, int n);

/// Empirical per-letter frequencies of S^n(seed). When `lengths` is non-empty,
/// mean_length is the frequency-weighted average piece length.
WordStatistics letter_frequencies(const Substitution& sub, Letter seed, int n,
                                  const std::map<Letter, double>& lengths = {});

/// Exact letter frequencies from the Perron-Frobenius eigenvector of the
/// incidence matrix (power iteration). For Fibonacci this gives 1/phi exactly
/// up to rounding, independent of any finite word.
WordStatistics perron_frequencies(const Substitution& sub,
                                  const std::map<Letter, double>& lengths = {});

/// True iff some power k <= |alphabet|^2 of the incidence matrix is
/// entrywise positive.
bool check_primitivity(const Substitution& sub);

/// F_n with F_1 = F_2 = 1.
std::uint64_t fibonacci_number(int n);

}  // namespace aps
