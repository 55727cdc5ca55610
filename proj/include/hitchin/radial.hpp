#pragma once

#include <array>
#include <vector>

#include "hitchin/algebra.hpp"
#include "hitchin/fields.hpp"

namespace hitchin {

enum class RadialKind { sinh_gordon, sine_gordon };

/// Sign choice in  alpha'' + alpha'/r +- (kappa^2/2) sinh(2 alpha) = 0.
/// `top` is the + variant: the nonlinearity restores alpha toward 0 and every
/// seed produces a decaying oscillatory tail (so(2,1) fields). `bottom` is the
/// - variant: the nonlinearity is repulsive and every a != 0 blows up at
/// finite radius (su(2) fields admit only alpha = 0). The sine equation has a
/// fixed sign, alpha'' + alpha'/r + (kappa^2/2) sin(2 alpha) = 0.
enum class RadialSign { top, bottom };

struct RadialProblem {
    RadialKind kind = RadialKind::sinh_gordon;
    RadialSign sign = RadialSign::top;  // ignored for sine_gordon
    double kappa = 1.0;
    double a = 1.0;      // alpha at the origin
    double r0 = 1e-3;    // hand-off radius of the series seed
    double r_max = 200.0;
    double tol = 1e-10;  // relative tolerance of the integrator
};

/// Real form on which the reconstructed ansatz
///   g = kappa cosh(alpha), h = kappa sinh(alpha)   (sinh kind)
///   g = kappa cos(alpha),  h = kappa sin(alpha)    (sine kind)
/// with f1 = -dy alpha, f2 = dx alpha closes the reduction equations:
/// top -> (1,0), bottom -> (0,0), sine -> (1,1). With these choices the
/// forcing sign is (-1)^{n1} in every case.
RealFormSignature radial_signature(const RadialProblem& p);

struct SeriesSeed {
    double alpha = 0.0;
    double dalpha = 0.0;
};

/// Seed values at r0 from the expansion of the regular solution,
///   alpha = a + c2 r^2 + c4 r^4 + O(r^6),
///   c2 = F(a)/4,  c4 = F'(a) c2 / 16,  F(alpha) = (-1)^{n1} (kappa^2/2) S(2 alpha)
/// with S = sinh or sin by kind. Requires kappa^2 r0^2 < 0.01 so that the
/// dropped r^6 term stays below the integrator tolerance scale.
SeriesSeed series_seed(const RadialProblem& p);

struct RadialSample {
    double r = 0.0;
    double alpha = 0.0;
    double dalpha = 0.0;
};

struct RadialSolution {
    RadialProblem problem;
    std::vector<RadialSample> samples;  // first entry at r0, last at r_max or blow-up
    bool diverged = false;
    double blow_up_radius = 0.0;  // where |alpha| crossed the guard (valid if diverged)
};

/// Adaptive integration from the series seed. Samples are dense enough to
/// resolve the asymptotic oscillation (step <= pi / (20 kappa)). Divergence
/// (|alpha| > 50 or step underflow) is reported, not thrown: the bottom-sign
/// equation is expected to blow up for every a != 0.
RadialSolution integrate_radial(const RadialProblem& p);

/// Cubic Hermite interpolation of (alpha, dalpha) between stored samples.
RadialSample sample_at(const RadialSolution& sol, double r);

/// Defect of the Painleve-III form of the equation at one point. With
/// U = e^alpha (sinh kind; V = e^{i alpha} for sine) and the ODE-consistent
/// second derivative alpha'' = -alpha'/r + F(alpha),
///   | U'' - U'^2/U + U'/r - (-1)^{n1} (kappa^2/4)(U^3 - 1/U) |.
/// Algebraically zero along solutions; evaluates the change of variables in
/// floating point.
double painleve_residual(const RadialProblem& p, double r, double alpha, double dalpha);

/// Max painleve_residual over all stored samples.
double max_painleve_residual(const RadialSolution& sol);

struct AsymptoticFit {
    double c = 0.0;       // tail amplitude, >= 0
    double theta0 = 0.0;  // phase offset in (-pi, pi]
    double r_lo = 0.0;    // fit window (0 for closed-form values)
    double r_hi = 0.0;
    double fit_residual = 0.0;  // rms misfit over the window
};

/// Closed-form tail parameters of the top-sign sinh equation:
///   c^2 = (4/pi) ln cosh(a),
///   theta0 = -(c^2/2) ln 2 - pi/4 + arg Gamma(i c^2/4) + (pi/2) sign(a).
/// a = 0 returns the trivial fit (c = 0).
AsymptoticFit exact_asymptotics(double a, double kappa);

/// Nonlinear least squares of the tail model
///   alpha(r) ~ c sin(kappa r + (c^2/4) ln(kappa r) - theta0) / sqrt(kappa r)
/// on the window [r_max/2, r_max]. Initial guess from exact_asymptotics for
/// the top-sign sinh equation, otherwise from the envelope amplitude and the
/// first zero crossing. Requires kappa * r_max >= 50 (several tail periods).
AsymptoticFit fit_tail(const RadialSolution& sol);

struct RadialObservables {
    double sigma = 0.0;              // action density
    double cumulative_action = 0.0;  // 2 pi int_0^r sigma r' dr', by the boundary form
    double f12 = 0.0;                // tau1 curvature coefficient (-1)^{n1} g h
    double j_theta = 0.0;            // azimuthal current -dF12/dr
};

RadialObservables observables_at(const RadialProblem& p, double r, double alpha,
                                 double dalpha);

/// Angular frequency of a sampled oscillatory signal (r_i, w_i): zero
/// crossings are located by linear interpolation and their positions
/// regressed against the crossing index; omega = pi / slope. Throws if fewer
/// than four crossings are present.
double oscillation_frequency(const std::vector<std::array<double, 2>>& samples);

/// The reconstruction named in radial_signature() as an AnsatzField over the
/// plane (interpolating stored samples), for residual cross-checks.
AnsatzField radial_ansatz(const RadialSolution& sol);

}  // namespace hitchin
