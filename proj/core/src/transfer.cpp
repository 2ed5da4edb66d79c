#include "apspec/transfer.hpp"

#include <cmath>
#include <stdexcept>

namespace aps {

namespace {
constexpr double kRescaleThreshold = 1e100;
}

double TransferMatrix::norm() const {
    // sigma_max^2 = (t + sqrt(t^2 - 4 det^2)) / 2 with t the Frobenius square;
    // entries are scaled out first so t^2 cannot overflow near 1e154
    double s = std::max({std::fabs(m11), std::fabs(m12), std::fabs(m21), std::fabs(m22)});
    if (s == 0.0) return 0.0;
    double a = m11 / s, b = m12 / s, c = m21 / s, d0 = m22 / s;
    double t = a * a + b * b + c * c + d0 * d0;
    double d = a * d0 - b * c;
    double disc = t * t - 4.0 * d * d;
    if (disc < 0) disc = 0;
    return s * std::sqrt(0.5 * (t + std::sqrt(disc)));
}

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

double ScaledMatrix::log_norm() const { return std::log(m.norm()) + log_scale; }

double ScaledMatrix::half_trace_log_magnitude() const {
    return std::log(std::fabs(0.5 * m.trace())) + log_scale;
}

bool ScaledMatrix::half_trace_representable() const {
    return half_trace_log_magnitude() < 700.0;
}

double ScaledMatrix::half_trace() const {
    if (!half_trace_representable())
        throw std::range_error("half trace exceeds double range; use the log magnitude");
    return 0.5 * m.trace() * std::exp(log_scale);
}

EnergyGrid EnergyGrid::uniform(double e_min, double e_max, std::size_t count) {
    if (!(e_min < e_max)) throw std::invalid_argument("empty energy window");
    if (count < 2) throw std::invalid_argument("energy grid needs >= 2 points");
    EnergyGrid g;
    g.e_min = e_min;
    g.e_max = e_max;
    g.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        g.points.push_back(e_min + (e_max - e_min) * static_cast<double>(i) /
                                       static_cast<double>(count - 1));
    return g;
}

TransferMatrix piece_matrix(const PotentialPiece& piece, double E) {
    if (!std::isfinite(E)) throw std::invalid_argument("non-finite energy");
    auto m = detail::piece_matrix_t<double>(piece, E);
    return {m.m11, m.m12, m.m21, m.m22};
}

ScaledMatrix word_matrix(const Model& model, const Word& word, double E) {
    if (word.empty()) throw std::invalid_argument("word_matrix on empty word");
    if (!std::isfinite(E)) throw std::invalid_argument("non-finite energy");

    ScaledMatrix acc{TransferMatrix::identity(), 0.0};
    for (Letter c : word.symbols) {
        TransferMatrix m = piece_matrix(model.piece(c), E);
        acc.m = m * acc.m;
        double n = acc.m.norm();
        if (n > kRescaleThreshold) {
            acc.m.m11 /= n;
            acc.m.m12 /= n;
            acc.m.m21 /= n;
            acc.m.m22 /= n;
            acc.log_scale += std::log(n);
        }
    }
    return acc;
}

double half_trace(const TransferMatrix& m) { return 0.5 * m.trace(); }

double growth_log_bound(const Model& model, const Word& word, double E) {
    double bound = 0.0;
    for (Letter c : word.symbols) {
        const PotentialPiece& p = model.piece(c);
        switch (p.kind) {
            case PotentialPiece::Kind::Constant:
                bound += std::max(1.0, std::fabs(p.value - E)) * p.length;
                break;
            case PotentialPiece::Kind::PointInteraction: {
                // free background plus the norm of the jump matrix
                bound += std::max(1.0, std::fabs(E)) * p.length;
                TransferMatrix jump{1, 0, p.value, 1};
                bound += std::log(jump.norm());
                break;
            }
            case PotentialPiece::Kind::Sampled: {
                double step = p.sample_step();
                for (std::size_t i = 0; i + 1 < p.samples.size(); ++i)
                    bound += std::max(1.0, std::fabs(p.samples[i] - E)) * step;
                break;
            }
        }
    }
    return bound;
}

}  // namespace aps
