#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hitchin/mat2.hpp"

namespace hitchin {

using CVec = std::vector<cplx>;
using CMat = std::vector<std::vector<cplx>>;  // square, row-major rows

/// Riemann theta function in the convention
///   theta(z | B) = sum_{n in Z^g} exp(2 pi i (n.B.n / 2 + n.z)),
/// z in C^g, B symmetric with positive definite imaginary part. The lattice
/// sum keeps the integer points within trunc_radius (Euclidean) of the peak
/// n* = -(Im B)^{-1} Im z of the summand modulus; the dropped tail is bounded
/// by the Gaussian decay exp(-pi mu ||n - n*||^2), mu the smallest eigenvalue
/// of Im B. Throws std::invalid_argument for an asymmetric B or one whose
/// imaginary part is not positive definite (the series would diverge).
cplx riemann_theta(const CVec& z, const CMat& B, double trunc_radius);

/// Same, with the radius from theta_truncation_radius(B, z, 1e-14).
cplx riemann_theta(const CVec& z, const CMat& B);

/// Radius making the dropped tail < tol relative to the peak term.
double theta_truncation_radius(const CMat& B, const CVec& z, double tol = 1e-12);

/// Spectral input for the doubly periodic solutions: the solution is built
/// from theta-function data alone, so validity is established by checks
/// (reality, periodicity on the declared lattice, PDE residual), not by
/// construction from a curve.
struct SpectralData {
    int genus = 0;
    CMat B;        // g x g Riemann matrix
    CVec U, V;     // period vectors; reality of alpha requires V = conj(U)
    CVec D;        // purely imaginary shift vector
    double kappa = 0.0;
    std::array<double, 2> lattice1{}, lattice2{};  // declared (x, y) periods
};

/// Parse the plain-text dataset format:
///   key = value, one per line, '#' comments;
///   keys genus, B, U, V, D, kappa, lattice1, lattice2;
///   complex entries are "re,im" tokens separated by whitespace, B row-major.
/// Validates genus >= 1, entry counts, B symmetric with positive definite
/// imaginary part, D purely imaginary, kappa > 0, independent lattice
/// vectors. Throws std::runtime_error naming the offending key.
SpectralData load_spectral_data(const std::string& path);
SpectralData parse_spectral_data(std::istream& in);

/// Real parameters the dataset exposes: g complex spectral positions plus g
/// imaginary shifts = 3g.
int parameter_count(const SpectralData& data);

/// Doubly periodic sinh-Gordon field at z = x + i y:
///   alpha = log[ theta(w + d | B) / theta(w + d + (1/2, ..., 1/2) | B) ],
///   w_j = -(U_j z + V_j conj(z)) / (4 pi),  d = D / (2 pi i)  (real since D
/// is imaginary). Throws std::domain_error when either theta factor is within
/// 1e-10 of zero (singular solution) and std::runtime_error when the log
/// ratio has imaginary part above 1e-8 (inconsistent data: alpha not real).
double dp_solution(const SpectralData& data, double x, double y);

/// Max |alpha(z + period) - alpha(z)| over an 8x8 sample of the fundamental
/// cell, for both declared periods.
double periodicity_defect(const SpectralData& data);

/// Samples of alpha over the fundamental cell of a real 2-D lattice, at
/// s-fractions (i/nx, j/ny) of the cell, x = s1 lattice1 + s2 lattice2.
struct TorusGrid {
    std::array<double, 2> lattice1{}, lattice2{};
    int nx = 0, ny = 0;
    std::vector<double> alpha;  // row-major, index j * nx + i
};

TorusGrid sample_torus(const std::function<double(double, double)>& alpha_xy,
                       const std::array<double, 2>& lattice1,
                       const std::array<double, 2>& lattice2, int nx, int ny);

/// Max |lap(alpha) + (kappa^2/2) sinh(2 alpha)| over the grid. The Laplacian
/// is formed in lattice coordinates, lap = sum_ab M_ab d^2/ds_a ds_b with
/// M = A^{-1} A^{-T} (A the column matrix of the lattice vectors), by
/// second-order central differences with periodic wrap-around. Requires
/// nx, ny >= 16.
double pde_residual_grid(const TorusGrid& grid, double kappa);

/// One closed orbit of the 1-D reduction alpha'' = -(kappa^2/2) sinh(2 alpha)
/// started from the turning point alpha(0) = a0, alpha'(0) = 0. Energy
/// (1/2) alpha'^2 + (kappa^2/4) cosh(2 alpha) is conserved; every a0 > 0
/// orbit is closed (confining potential), giving an exact solution that is
/// periodic in x with period L and independent of y - the positive control
/// for the torus residual pipeline.
struct LibrationProfile {
    double kappa = 0.0;
    double a0 = 0.0;
    double period = 0.0;                          // L
    std::vector<std::array<double, 3>> samples;   // (t, alpha, dalpha), t in [0, L]
    double alpha(double t) const;                 // periodic cubic-Hermite evaluation
};

/// Period by energy quadrature,
///   L = (4/kappa) int_0^{pi/2} a0 cos(psi) / sqrt(sinh(a0+al) sinh(a0-al)) dpsi
/// with al = a0 sin(psi) (the product form of cosh(2a0) - cosh(2 al) avoids
/// cancellation at the turning point). L -> 2 pi / kappa as a0 -> 0.
double libration_period(double a0, double kappa);

LibrationProfile libration_profile(double a0, double kappa);

}  // namespace hitchin
