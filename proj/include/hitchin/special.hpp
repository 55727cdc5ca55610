#pragma once

#include <complex>

namespace hitchin {

/// Principal branch of log Gamma(z) for complex z (z not a nonpositive
/// integer). Lanczos approximation, |relative error| ~ 1e-13 over the tested
/// range; reflection handles Re z < 1/2.
std::complex<double> log_gamma(std::complex<double> z);

/// arg Gamma(i y) for real y != 0, continuous lift in (-pi, pi] per the
/// principal branch of log_gamma. Accuracy ~1e-12.
double arg_gamma_imag_axis(double y);

}  // namespace hitchin
