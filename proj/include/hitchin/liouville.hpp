#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "hitchin/fields.hpp"
#include "hitchin/quadrature.hpp"

namespace hitchin {

/// Sign branch of the Liouville equation lap(ln lambda) +- 2 lambda = 0.
/// `noncompact` is the + branch (so(2,1) fields, denominator 1 + |xi|^2,
/// globally smooth); `compact` is the - branch (su(2), denominator
/// 1 - |xi|^2, singular on |xi| = 1).
enum class LiouvilleBranch { noncompact, compact };

/// lambda = 4 |xi'(z)|^2 / (1 +- |xi(z)|^2)^2 for monomial xi = z^nu.
/// Throws std::domain_error on the compact branch at the |z|^(2 nu) = 1 ring.
double lambda_monomial(double nu, LiouvilleBranch branch, double x, double y);

/// lambda for polynomial xi(z) = prod (z - root_k), noncompact branch.
double lambda_polynomial(const std::vector<std::complex<double>>& roots, double x,
                         double y);

/// Exact solution fields in the radial gauge,
///   f1 = -a(r) y / r^2,  f2 = a(r) x / r^2,
///   a(r) = nu - 1 -+ 2 nu r^{2 nu} / (1 +- r^{2 nu}),
///   g = h = 2 |nu| r^{nu - 1} / |1 +- r^{2 nu}|.
/// Satisfies the reduction equations away from r = 0 (kappa = 0 class).
AnsatzField liouville_pair_polar(double nu, LiouvilleBranch branch);

/// Multi-center generalization from polynomial xi (noncompact branch):
/// g = h = sqrt(lambda), f1 = 2 Im d_z ln g, f2 = 2 Re d_z ln g.
/// Evaluation at a zero of xi' throws std::domain_error (lambda vanishes, the
/// logarithmic derivative is undefined there).
AnsatzField multicenter_field(std::vector<std::complex<double>> roots);

/// Magnetic flux of the abelian tau1 part, integral of the F12 coefficient
/// over the plane. Analytic value for monomial xi is -4 pi nu.
double flux_monomial_analytic(double nu);

/// Numerical flux by adaptive quadrature of the on-shell F12 coefficient
/// -lambda (noncompact branch). Monomial version integrates radially.
QuadResult flux_monomial_quadrature(double nu);

/// 2-D adaptive quadrature of -lambda_polynomial over the plane.
QuadResult flux_polynomial_quadrature(const std::vector<std::complex<double>>& roots);

/// Coordinate patches of the monomial solution, regular at the origin and at
/// infinity respectively. Integer nu required (the two patches glue by the
/// single-valued transformation exp(2 nu theta tau1) only then).
struct LiouvillePatches {
    FourPotential origin;    // A' : a'(r) = -2 nu r^{2nu} / (1 + r^{2nu}) -> 0 at r=0
    FourPotential infinity;  // A'': a''(r) = 2 nu / (1 + r^{2nu}) -> 0 at r=inf
    double nu;
};

LiouvillePatches patch_pair(double nu);

/// Max entrywise deviation, over the four components, between the origin
/// patch gauge-transformed by exp(2 nu theta tau1) and the infinity patch,
/// evaluated at (r, theta).
double patch_transition_defect(const LiouvillePatches& patches, double r, double theta);

}  // namespace hitchin
