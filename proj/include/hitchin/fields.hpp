#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hitchin/algebra.hpp"

namespace hitchin {

/// Scalar field on the (x, y) plane: either an analytic callable or a grid of
/// samples. Grid fields are evaluated at nodes only; derivative stencils use
/// the native spacing. Callable fields use central differences.
class ScalarField {
  public:
    using Fn = std::function<double(double, double)>;

    ScalarField() = default;
    ScalarField(Fn f) : fn_(std::move(f)) {}  // NOLINT: implicit by design

    struct Grid {
        double x0 = 0.0, y0 = 0.0;
        double dx = 0.0, dy = 0.0;
        int nx = 0, ny = 0;
        std::vector<double> values;  // row-major, index j * nx + i
    };
    explicit ScalarField(Grid g);

    bool is_grid() const { return grid_.has_value(); }
    const Grid& grid() const { return *grid_; }

    double operator()(double x, double y) const;

  private:
    Fn fn_;
    std::optional<Grid> grid_;
};

/// Finite-difference controls. First-derivative stencils default to 1e-4;
/// second-derivative stencils use a larger step because the round-off floor of
/// a second difference at h = 1e-4 (~1e-7 |f|) would swamp the 1e-6 residual
/// scales this library verifies.
struct FdOptions {
    double step_first = 1e-4;
    double step_second = 1e-3;
};

/// The reduced connection built from four scalar functions of (x, y):
///   A = (f1 dx + f2 dy) tau1 + g du tau2 + h dv tau3.
struct AnsatzField {
    RealFormSignature sig;
    ScalarField f1, f2, g, h;
};

/// Components F_{mu nu} of the curvature of an AnsatzField, mu < nu, in the
/// coordinate order (x, y, u, v).
struct CurvatureComponents {
    LieElement f12, f13, f14, f23, f24, f34;
};

/// Residuals of the five first-order reduction equations
///   r1 = dx g - (-1)^{n2} f2 h      r2 = dy g + (-1)^{n2} f1 h
///   r3 = dx h - f2 g                r4 = dy h + f1 g
///   r5 = dx f2 - dy f1 - (-1)^{n1} g h
struct HitchinResidual {
    std::array<double, 5> r{};
    double max_abs() const;
};

/// Curvature components at a point, derivatives by finite differences.
CurvatureComponents curvature(const AnsatzField& field, double x, double y,
                              const FdOptions& fd = {});

HitchinResidual hitchin_residual(const AnsatzField& field, double x, double y,
                                 const FdOptions& fd = {});

/// g^2 - (-1)^{n2} h^2; constant on solutions of the reduction equations.
double kappa_squared(const AnsatzField& field, double x, double y);

/// Residual of the second-order equation for g alone,
///   lap(g) - g (grad g)^2 / (g^2 - kappa^2) - (-1)^{n1} g (g^2 - kappa^2).
/// Throws std::domain_error within the singular layer
/// |g^2 - kappa^2| < 1e-10 max(1, kappa^2).
double field_equation_residual_g(const ScalarField& g, double kappa,
                                 RealFormSignature sig, double x, double y,
                                 const FdOptions& fd = {});

/// On-shell action density sigma = (-1)^{n1} / (16 pi^2) lap(g^2).
double action_density(const ScalarField& g, RealFormSignature sig, double x, double y,
                      const FdOptions& fd = {});

/// Raw action integrand of the full four-dimensional functional,
///   (1/8 pi^2) [ (-1)^{n2} (g h)^2
///               + (-1)^{n1+n2} (f1^2 + f2^2)(g^2 + (-1)^{n2} h^2) ].
double action_density_raw(const AnsatzField& field, double x, double y);

/// The same quantity expressed through g alone (valid on solutions),
///   (1/8 pi^2) [ g^2 (g^2 - kappa^2)
///               + (-1)^{n1} (grad g)^2 (2 g^2 - kappa^2) / (g^2 - kappa^2) ].
double action_density_g(const ScalarField& g, double kappa, RealFormSignature sig,
                        double x, double y, const FdOptions& fd = {});

/// Boundary form of the reduced radial action. For a radially sampled g(r),
/// the total action over the annulus [r_min, r_max] equals
///   b(r_max) - b(r_min),  b(r) = (-1)^{n1} / (8 pi) * r * d(g^2)/dr.
struct ReducedAction {
    double value = 0.0;        // b(r_max) - b(r_min)
    double bracket_lo = 0.0;   // b(r_min)
    double bracket_hi = 0.0;   // b(r_max)
    bool oscillatory = false;  // bracket oscillates over the sampled tail
    bool divergent = false;    // bracket grows without bound toward r_max
    double tail_amplitude = 0.0;  // amplitude estimate when oscillatory
};

/// samples: (r, g(r)) pairs, strictly increasing r, at least 8 points.
ReducedAction reduced_action_radial(const std::vector<std::array<double, 2>>& samples,
                                    RealFormSignature sig);

/// Frobenius norm of the curvature of the flat combination
///   B = Atilde + Phi + Phi*  with components
///   B_x = f1 tau1 - i h tau3,  B_y = f2 tau1 + i g tau2,
/// i.e. |dB + B wedge B| at the point. Vanishes on solutions.
double flat_connection_residual(const AnsatzField& field, double x, double y,
                                const FdOptions& fd = {});

/// General four-component connection with matrix-valued coefficients; used for
/// gauge descriptions that do not fit the AnsatzField shape (e.g. coordinate
/// patches of the exact solutions). Components ordered (x, y, u, v).
struct FourPotential {
    RealFormSignature sig;
    std::array<std::function<Mat2(double, double)>, 4> comp;
};

/// Gauge transform A -> q^{-1} A q + q^{-1} dq for q(x, y) = exp(chi(x,y) X)
/// with fixed generator X; dchi supplies (dchi/dx, dchi/dy) analytically.
FourPotential gauge_transform_exp(const FourPotential& a, const Mat2& generator,
                                  std::function<double(double, double)> chi,
                                  std::function<std::array<double, 2>(double, double)> dchi);

}  // namespace hitchin
