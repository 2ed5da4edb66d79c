#pragma once

#include <map>
#include <string>
#include <vector>

#include "apspec/subshift.hpp"

namespace aps {

/// Local potential on [0, length). A PointInteraction is a single delta of
/// strength `value` at the left endpoint of a free interval; it is kept
/// symbolic and never sampled, all of its physics goes through the jump
/// matrix in the transfer module.
struct PotentialPiece {
    enum class Kind { Constant, PointInteraction, Sampled };

    Kind kind = Kind::Constant;
    double value = 0.0;  // constant value, or delta strength
    double length = 1.0;
    std::vector<double> samples;  // Sampled only, uniform grid, >= 2 entries

    double sample_step() const;  // length / (samples - 1)

    static PotentialPiece constant(double value, double length);
    static PotentialPiece point_interaction(double strength, double length);
    static PotentialPiece sampled(std::vector<double> samples, double length);
};

/// Alphabet, per-letter potential pieces, substitution rule, and the two
/// designated letters seeding the trace-map initial conditions.
struct Model {
    Alphabet alphabet;
    std::map<Letter, PotentialPiece> pieces;
    Substitution substitution;
    Letter letter_a = 'a';
    Letter letter_b = 'b';
    std::map<std::string, double> parameters;  // named couplings, e.g. lambda

    const PotentialPiece& piece(Letter c) const;
    std::map<Letter, double> lengths() const;
    bool has_point_interactions() const;
};

struct ConcatenatedPotential {
    Word word;
    std::vector<double> breakpoints;  // breakpoints[k] = sum of lengths before cell k
    double total_length = 0.0;
};

/// Lays the per-letter pieces along the word, origin at the left edge of the
/// first piece. Throws std::invalid_argument for an empty word.
ConcatenatedPotential concatenate(const Model& model, const Word& word);

/// Pointwise value at x in [0, total_length). Inside a PointInteraction piece
/// the free background 0 is returned and, when given, *delta_warning is set.
double evaluate(const ConcatenatedPotential& pot, const Model& model, double x,
                bool* delta_warning = nullptr);

/// Heuristic degeneracy warnings: indistinguishable letters, all-zero pieces.
std::vector<std::string> validate_model(const Model& model);

}  // namespace aps
