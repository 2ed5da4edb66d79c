#pragma once

#include <vector>

#include "apspec/detail/real_math.hpp"
#include "apspec/potential.hpp"

namespace aps {

/// Unimodular 2x2 matrix mapping (u(0), u'(0))^T to (u(l), u'(l))^T.
struct TransferMatrix {
    double m11 = 1, m12 = 0, m21 = 0, m22 = 1;

    double det() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }
    /// Largest singular value (closed form for 2x2).
    double norm() const;

    friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b);
    static TransferMatrix identity() { return {}; }
};

/// Matrix with a split-off log magnitude: the represented matrix is
/// m * exp(log_scale). Long word products stay finite this way.
struct ScaledMatrix {
    TransferMatrix m;
    double log_scale = 0.0;

    double log_norm() const;  // log of the represented matrix norm
    double half_trace_log_magnitude() const;
    bool half_trace_representable() const;
    double half_trace() const;  // throws if not representable in double
};

struct EnergyGrid {
    double e_min = 0, e_max = 1;
    std::vector<double> points;

    static EnergyGrid uniform(double e_min, double e_max, std::size_t count);
};

/// Transfer matrix of one potential piece at energy E. Constant pieces use
/// the entire functions c, s (series near E = v); point interactions are
/// free propagation times the delta jump applied first; sampled pieces are
/// exact per-cell constant products.
TransferMatrix piece_matrix(const PotentialPiece& piece, double E);

/// Right-to-left product M(w_{k-1}) ... M(w_0), the cocycle order.
ScaledMatrix word_matrix(const Model& model, const Word& word, double E);

double half_trace(const TransferMatrix& m);

/// log of the elementary growth bound exp(integral of max(1, |V - E|)).
/// Delta pieces contribute their free background plus log(norm of jump).
double growth_log_bound(const Model& model, const Word& word, double E);

namespace detail {

template <class Real>
Mat2T<Real> piece_matrix_t(const PotentialPiece& piece, Real E) {
    switch (piece.kind) {
        case PotentialPiece::Kind::Constant:
            return constant_cell(E - Real(piece.value), Real(piece.length));
        case PotentialPiece::Kind::PointInteraction:
            return constant_cell(E, Real(piece.length)) * delta_jump(Real(piece.value));
        case PotentialPiece::Kind::Sampled: {
            Real step = Real(piece.length) / Real(piece.samples.size() - 1);
            auto m = Mat2T<Real>::identity();
            for (std::size_t i = 0; i + 1 < piece.samples.size(); ++i)
                m = constant_cell(E - Real(piece.samples[i]), step) * m;
            return m;
        }
    }
    return Mat2T<Real>::identity();
}

}  // namespace detail

}  // namespace aps
