#include "apspec/models.hpp"

#include <stdexcept>

#include "apspec/detail/real_math.hpp"

namespace aps {

namespace {

using detail::HighReal;

ClosedFormModel make(ClosedFormModel::Kind kind, double lambda) {
    ClosedFormModel m;
    m.kind = kind;
    m.coupling = lambda;
    return m;
}

}  // namespace

ClosedFormModel ClosedFormModel::free() { return make(Kind::Free, 0.0); }

ClosedFormModel ClosedFormModel::step(double lambda) {
    if (lambda < 0) throw std::invalid_argument("step coupling must be >= 0");
    return make(Kind::Step, lambda);
}

ClosedFormModel ClosedFormModel::kronig_penney(double lambda) {
    return make(Kind::KronigPenney, lambda);
}

double closed_form_invariant(const ClosedFormModel& m, double E) {
    const auto e = static_cast<HighReal>(E);
    const auto lam = static_cast<HighReal>(m.coupling);
    switch (m.kind) {
        case ClosedFormModel::Kind::Free:
            return 0.0;
        case ClosedFormModel::Kind::Step: {
            HighReal s1 = detail::sinc_sqrt(e, HighReal(1));
            HighReal s2 = detail::sinc_sqrt(e - lam, HighReal(1));
            return static_cast<double>(lam * lam / HighReal(4) * s1 * s1 * s2 * s2);
        }
        case ClosedFormModel::Kind::KronigPenney: {
            HighReal s1 = detail::sinc_sqrt(e, HighReal(1));
            return static_cast<double>(lam * lam / HighReal(4) * s1 * s1);
        }
    }
    throw std::logic_error("unreachable model kind");
}

bool invariant_extended_branch(const ClosedFormModel& m, double E) {
    switch (m.kind) {
        case ClosedFormModel::Kind::Free:
            return false;
        case ClosedFormModel::Kind::Step:
            // below either plateau the sine factors continue as sinh
            return E < 0.0 || E < m.coupling;
        case ClosedFormModel::Kind::KronigPenney:
            return E < 0.0;
    }
    throw std::logic_error("unreachable model kind");
}

TraceTriple closed_form_initials(const ClosedFormModel& m, double E, KpTraceVariant variant) {
    const auto e = static_cast<HighReal>(E);
    const auto lam = static_cast<HighReal>(m.coupling);
    const HighReal one(1), two(2);
    TraceTriple t;
    switch (m.kind) {
        case ClosedFormModel::Kind::Free: {
            HighReal c1 = detail::cos_sqrt(e, one);
            t.x_prev = static_cast<double>(c1);
            t.x_cur = static_cast<double>(c1);
            t.x_next = static_cast<double>(detail::cos_sqrt(e, two));
            return t;
        }
        case ClosedFormModel::Kind::Step: {
            HighReal c1 = detail::cos_sqrt(e, one);
            HighReal s1 = detail::sinc_sqrt(e, one);
            HighReal c2 = detail::cos_sqrt(e - lam, one);
            HighReal s2 = detail::sinc_sqrt(e - lam, one);
            t.x_prev = static_cast<double>(c1);
            t.x_cur = static_cast<double>(c2);
            t.x_next = static_cast<double>(c1 * c2 - (two * e - lam) / two * s1 * s2);
            return t;
        }
        case ClosedFormModel::Kind::KronigPenney: {
            HighReal c1 = detail::cos_sqrt(e, one);
            HighReal s1 = detail::sinc_sqrt(e, one);
            HighReal c2 = detail::cos_sqrt(e, two);
            HighReal s2 = detail::sinc_sqrt(e, two);
            t.x_prev = static_cast<double>(c1);
            t.x_cur = variant == KpTraceVariant::MatrixDerived
                          ? static_cast<double>(c1 + lam / two * s1)
                          : static_cast<double>(c2 + lam / two * s1);
            t.x_next = static_cast<double>(c2 + lam / two * s2);
            return t;
        }
    }
    throw std::logic_error("unreachable model kind");
}

Model realize(const ClosedFormModel& m) {
    Model model;
    model.alphabet.letters = {'a', 'b'};
    model.substitution = Substitution::fibonacci();
    model.parameters["lambda"] = m.coupling;
    switch (m.kind) {
        case ClosedFormModel::Kind::Free:
            model.pieces['a'] = PotentialPiece::constant(0.0, 1.0);
            model.pieces['b'] = PotentialPiece::constant(0.0, 1.0);
            break;
        case ClosedFormModel::Kind::Step:
            model.pieces['a'] = PotentialPiece::constant(m.coupling, 1.0);
            model.pieces['b'] = PotentialPiece::constant(0.0, 1.0);
            break;
        case ClosedFormModel::Kind::KronigPenney:
            model.pieces['a'] = PotentialPiece::point_interaction(m.coupling, 1.0);
            model.pieces['b'] = PotentialPiece::constant(0.0, 1.0);
            break;
    }
    return model;
}

std::optional<ClosedFormModel> recognize_closed_form(const Model& model) {
    if (model.substitution.rules.size() != 2) return std::nullopt;
    // the designated letters must play the Fibonacci roles a -> ab, b -> a
    auto ra = model.substitution.rules.find(model.letter_a);
    auto rb = model.substitution.rules.find(model.letter_b);
    if (ra == model.substitution.rules.end() || rb == model.substitution.rules.end())
        return std::nullopt;
    std::string ab{model.letter_a, model.letter_b};
    if (ra->second != ab || rb->second != std::string(1, model.letter_a)) return std::nullopt;

    const PotentialPiece& pa = model.piece(model.letter_a);
    const PotentialPiece& pb = model.piece(model.letter_b);
    if (pa.length != 1.0 || pb.length != 1.0) return std::nullopt;
    if (pb.kind != PotentialPiece::Kind::Constant || pb.value != 0.0) return std::nullopt;

    if (pa.kind == PotentialPiece::Kind::Constant) {
        if (pa.value == 0.0) return ClosedFormModel::free();
        if (pa.value > 0.0) return ClosedFormModel::step(pa.value);
        return std::nullopt;
    }
    if (pa.kind == PotentialPiece::Kind::PointInteraction)
        return ClosedFormModel::kronig_penney(pa.value);
    return std::nullopt;
}

}  // namespace aps
