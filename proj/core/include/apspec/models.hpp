#pragma once

#include <optional>

#include "apspec/tracemap.hpp"

namespace aps {

/// Closed-form reference models with unit lengths, used as oracles against
/// the numeric transfer-matrix pipeline.
struct ClosedFormModel {
    enum class Kind { Free, Step, KronigPenney };
    Kind kind = Kind::Free;
    double coupling = 0.0;  // lambda; Step requires lambda >= 0

    static ClosedFormModel free();
    static ClosedFormModel step(double lambda);
    static ClosedFormModel kronig_penney(double lambda);
};

/// Two conventions for the Kronig-Penney half-trace x_0 are in circulation;
/// both are exposed and the oracle tests record which one reproduces the
/// invariant formula (MatrixDerived does, exactly).
enum class KpTraceVariant { AsPrinted, MatrixDerived };

/// Fricke-Vogt invariant along the curve of initial conditions:
///   Free: 0
///   Step: lambda^2/4 * s(E,1)^2 * s(E - lambda,1)^2  (one entire formula
///         covering both oscillatory and tunneling branches)
///   Kronig-Penney: lambda^2/4 * s(E,1)^2
double closed_form_invariant(const ClosedFormModel& m, double E);

/// True when E sits on the hyperbolic continuation (E < 0 for Step/KP).
bool invariant_extended_branch(const ClosedFormModel& m, double E);

TraceTriple closed_form_initials(const ClosedFormModel& m, double E,
                                 KpTraceVariant variant = KpTraceVariant::MatrixDerived);

/// Numeric Model realizing the closed form through the generic pipeline.
Model realize(const ClosedFormModel& m);

/// Inverse of realize up to letter naming: matches unit-length Fibonacci
/// models whose pieces are (constant v, constant 0) or (delta, constant 0).
std::optional<ClosedFormModel> recognize_closed_form(const Model& model);

}  // namespace aps
