#include "apspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aps {

double PotentialPiece::sample_step() const {
    if (kind != Kind::Sampled || samples.size() < 2)
        throw std::logic_error("sample_step on non-sampled piece");
    return length / static_cast<double>(samples.size() - 1);
}

PotentialPiece PotentialPiece::constant(double value, double length) {
    if (!(length > 0)) throw std::invalid_argument("piece length must be positive");
    return PotentialPiece{Kind::Constant, value, length, {}};
}

PotentialPiece PotentialPiece::point_interaction(double strength, double length) {
    if (!(length > 0)) throw std::invalid_argument("piece length must be positive");
    return PotentialPiece{Kind::PointInteraction, strength, length, {}};
}

PotentialPiece PotentialPiece::sampled(std::vector<double> samples, double length) {
    if (!(length > 0)) throw std::invalid_argument("piece length must be positive");
    if (samples.size() < 2) throw std::invalid_argument("sampled piece needs >= 2 samples");
    return PotentialPiece{Kind::Sampled, 0.0, length, std::move(samples)};
}

const PotentialPiece& Model::piece(Letter c) const {
    auto it = pieces.find(c);
    if (it == pieces.end())
        throw std::invalid_argument(std::string("no potential piece for letter ") + c);
    return it->second;
}

std::map<Letter, double> Model::lengths() const {
    std::map<Letter, double> out;
    for (const auto& [letter, piece] : pieces) out[letter] = piece.length;
    return out;
}

bool Model::has_point_interactions() const {
    for (const auto& [_, piece] : pieces)
        if (piece.kind == PotentialPiece::Kind::PointInteraction) return true;
    return false;
}

ConcatenatedPotential concatenate(const Model& model, const Word& word) {
    if (word.empty()) throw std::invalid_argument("cannot concatenate an empty word");
    ConcatenatedPotential pot;
    pot.word = word;
    pot.breakpoints.reserve(word.size());
    double pos = 0.0;
    for (Letter c : word.symbols) {
        pot.breakpoints.push_back(pos);
        pos += model.piece(c).length;
    }
    pot.total_length = pos;
    return pot;
}

double evaluate(const ConcatenatedPotential& pot, const Model& model, double x,
                bool* delta_warning) {
    if (!(x >= 0.0) || !(x < pot.total_length))
        throw std::invalid_argument("evaluation point outside the concatenation");

    auto it = std::upper_bound(pot.breakpoints.begin(), pot.breakpoints.end(), x);
    std::size_t cell = static_cast<std::size_t>(it - pot.breakpoints.begin()) - 1;
    const PotentialPiece& piece = model.piece(pot.word.symbols[cell]);
    double local = x - pot.breakpoints[cell];

    switch (piece.kind) {
        case PotentialPiece::Kind::Constant:
            return piece.value;
        case PotentialPiece::Kind::PointInteraction:
            if (delta_warning) *delta_warning = true;
            return 0.0;  // delta is not pointwise-evaluable; free background
        case PotentialPiece::Kind::Sampled: {
            double step = piece.sample_step();
            auto i = static_cast<std::size_t>(local / step);  // left sample
            i = std::min(i, piece.samples.size() - 2);
            return piece.samples[i];
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

bool pieces_equal(const PotentialPiece& p, const PotentialPiece& q) {
    if (p.kind != q.kind || p.length != q.length) return false;
    if (p.kind == PotentialPiece::Kind::Sampled) return p.samples == q.samples;
    return p.value == q.value;
}

bool piece_is_zero(const PotentialPiece& p) {
    switch (p.kind) {
        case PotentialPiece::Kind::Constant: return p.value == 0.0;
        case PotentialPiece::Kind::PointInteraction: return p.value == 0.0;
        case PotentialPiece::Kind::Sampled:
            return std::all_of(p.samples.begin(), p.samples.end(),
                               [](double v) { return v == 0.0; });
    }
    return false;
}

}  // namespace

std::vector<std::string> validate_model(const Model& model) {
    std::vector<std::string> warnings;
    if (model.alphabet.letters.empty()) {
        warnings.push_back("empty alphabet");
        return warnings;
    }
    for (Letter c : model.alphabet.letters) model.piece(c);  // throws if missing

    const auto& letters = model.alphabet.letters;
    for (std::size_t i = 0; i < letters.size(); ++i)
        for (std::size_t j = i + 1; j < letters.size(); ++j)
            if (pieces_equal(model.piece(letters[i]), model.piece(letters[j])))
                warnings.push_back(std::string("letters indistinguishable: ") + letters[i] +
                                   " and " + letters[j]);

    bool all_zero = std::all_of(letters.begin(), letters.end(), [&](Letter c) {
        return piece_is_zero(model.piece(c));
    });
    if (all_zero) warnings.push_back("all pieces are zero (free model, periodic potential)");
    return warnings;
}

}  // namespace aps
