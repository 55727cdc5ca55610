#pragma once

#include <cmath>
#include <complex>

namespace hitchin {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix, row-major {a b; c d}. Value type for Lie-algebra
/// elements and gauge transformations; everything the library needs fits in
/// closed form at this size, so there is no external linear-algebra dependency.
struct Mat2 {
    cplx a{0.0}, b{0.0}, c{0.0}, d{0.0};

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator*(cplx s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
    friend Mat2 operator*(const Mat2& x, cplx s) { return s * x; }
    friend Mat2 operator*(double s, const Mat2& x) { return cplx(s) * x; }
    Mat2& operator+=(const Mat2& y) { *this = *this + y; return *this; }
    Mat2& operator-=(const Mat2& y) { *this = *this - y; return *this; }

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }
};

inline cplx trace(const Mat2& m) { return m.a + m.d; }
inline cplx det(const Mat2& m) { return m.a * m.d - m.b * m.c; }

inline Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

inline double frobenius_norm(const Mat2& m) {
    return std::sqrt(std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d));
}

/// Inverse; caller guarantees det != 0.
inline Mat2 inverse(const Mat2& m) {
    const cplx id = 1.0 / det(m);
    return {m.d * id, -m.b * id, -m.c * id, m.a * id};
}

/// exp(M) for traceless M via exp(M) = cosh(s) I + sinh(s)/s M with s^2 = -det M.
/// All gauge transformations used here live in one-parameter subgroups of
/// traceless generators, so this closed form is exact.
inline Mat2 expm_traceless(const Mat2& m) {
    const cplx s2 = -det(m);
    const cplx s = std::sqrt(s2);
    cplx ch, shs;  // cosh(s), sinh(s)/s
    if (std::abs(s) < 1e-8) {
        ch = 1.0 + s2 / 2.0 + s2 * s2 / 24.0;
        shs = 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
    } else {
        ch = std::cosh(s);
        shs = std::sinh(s) / s;
    }
    Mat2 r = shs * m;
    r.a += ch;
    r.d += ch;
    return r;
}

}  // namespace hitchin
