#pragma once

// Scalar-generic kernels used by the transfer-matrix code. The same formulas
// run in double for sweeps and in extended precision where cancellation in
// the Fricke-Vogt invariant would otherwise dominate (free case, E < 0).

#include <cmath>

#if defined(APSPEC_HAVE_QUADMATH) && defined(__SIZEOF_FLOAT128__)
#include <quadmath.h>
#define APSPEC_QUAD_ENABLED 1
#endif

namespace aps::detail {

inline double r_sqrt(double x) { return std::sqrt(x); }
inline double r_cos(double x) { return std::cos(x); }
inline double r_sin(double x) { return std::sin(x); }
inline double r_cosh(double x) { return std::cosh(x); }
inline double r_sinh(double x) { return std::sinh(x); }
inline double r_abs(double x) { return std::fabs(x); }

inline long double r_sqrt(long double x) { return std::sqrt(x); }
inline long double r_cos(long double x) { return std::cos(x); }
inline long double r_sin(long double x) { return std::sin(x); }
inline long double r_cosh(long double x) { return std::cosh(x); }
inline long double r_sinh(long double x) { return std::sinh(x); }
inline long double r_abs(long double x) { return std::fabs(x); }

#ifdef APSPEC_QUAD_ENABLED
inline __float128 r_sqrt(__float128 x) { return sqrtq(x); }
inline __float128 r_cos(__float128 x) { return cosq(x); }
inline __float128 r_sin(__float128 x) { return sinq(x); }
inline __float128 r_cosh(__float128 x) { return coshq(x); }
inline __float128 r_sinh(__float128 x) { return sinhq(x); }
inline __float128 r_abs(__float128 x) { return fabsq(x); }
using HighReal = __float128;
#else
using HighReal = long double;
#endif

/// c(z, l) = cos(sqrt(z) l), entire in z. Series branch keeps the function
/// smooth across z = 0 (relative error < 1e-14 inside |z| l^2 < 1e-2).
template <class Real>
Real cos_sqrt(Real z, Real len) {
    Real w = z * len * len;
    if (r_abs(w) < Real(1e-2)) {
        Real term = Real(1), acc = Real(1);
        for (int k = 1; k <= 8; ++k) {
            term *= -w / Real((2 * k - 1) * (2 * k));
            acc += term;
        }
        return acc;
    }
    if (z > Real(0)) return r_cos(r_sqrt(z) * len);
    return r_cosh(r_sqrt(-z) * len);
}

/// s(z, l) = sin(sqrt(z) l) / sqrt(z), entire in z; s(0, l) = l.
template <class Real>
Real sinc_sqrt(Real z, Real len) {
    Real w = z * len * len;
    if (r_abs(w) < Real(1e-2)) {
        Real term = len, acc = len;
        for (int k = 1; k <= 8; ++k) {
            term *= -w / Real((2 * k) * (2 * k + 1));
            acc += term;
        }
        return acc;
    }
    if (z > Real(0)) return r_sin(r_sqrt(z) * len) / r_sqrt(z);
    return r_sinh(r_sqrt(-z) * len) / r_sqrt(-z);
}

/// 2x2 real matrix in the (u, u')^T solution basis.
template <class Real>
struct Mat2T {
    Real m11, m12, m21, m22;

    friend Mat2T operator*(const Mat2T& a, const Mat2T& b) {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }
    Real trace() const { return m11 + m22; }
    Real det() const { return m11 * m22 - m12 * m21; }
    static Mat2T identity() { return {Real(1), Real(0), Real(0), Real(1)}; }
};

/// Transfer matrix across a constant potential cell: z = E - v.
template <class Real>
Mat2T<Real> constant_cell(Real z, Real len) {
    Real c = cos_sqrt(z, len);
    Real s = sinc_sqrt(z, len);
    return {c, s, -z * s, c};
}

/// Jump matrix of a delta interaction of strength lambda: u continuous,
/// u' jumps by lambda u.
template <class Real>
Mat2T<Real> delta_jump(Real lambda) {
    return {Real(1), Real(0), lambda, Real(1)};
}

}  // namespace aps::detail
