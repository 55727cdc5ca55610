#include "hitchin/special.hpp"

#include <cmath>
#include <numbers>

namespace hitchin {

namespace {

using cd = std::complex<double>;

// Lanczos coefficients, g = 7, n = 9 (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cd log_gamma_core(cd z) {
    // valid for Re z > 0; input here always has Re z >= 1/2
    z -= 1.0;
    cd x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cd t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cd log_gamma(cd z) {
    if (z.real() < 0.5) {
        // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
        // Keep the branch consistent by unwinding the sine's phase: for
        // Im z != 0, log sin(pi z) computed directly overflows/wraps, so use
        // sin(pi z) via exponentials with the dominant term factored out.
        const cd pi = std::numbers::pi;
        const cd lg1mz = log_gamma_core(1.0 - z);
        // log sin(pi z), branch-tracked for moderate |Im z|
        const cd s = std::sin(pi * z);
        cd logsin = std::log(s);
        // unwrap: for large |Im z| the principal log of sin already matches the
        // asymptotic branch as long as |Im(pi z)| < ~700 (no overflow); inputs
        // here stay far below that.
        return std::log(pi) - logsin - lg1mz;
    }
    return log_gamma_core(z);
}

double arg_gamma_imag_axis(double y) {
    // Gamma(iy) = Gamma(1 + iy) / (iy); arg(iy) = sign(y) pi/2.
    const cd lg = log_gamma(cd(1.0, y));
    double a = lg.imag() - std::copysign(std::numbers::pi / 2.0, y);
    // principal value
    const double two_pi = 2.0 * std::numbers::pi;
    while (a > std::numbers::pi) a -= two_pi;
    while (a <= -std::numbers::pi) a += two_pi;
    return a;
}

}  // namespace hitchin
