#include "hitchin/liouville.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "hitchin/algebra.hpp"

namespace hitchin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Value, first and second derivative of the monic polynomial with the given
// roots, accumulated by the product rule (stable, no division by xi).
struct PolyJet {
    cplx p{1.0}, dp{0.0}, d2p{0.0};
};

PolyJet poly_jet(const std::vector<cplx>& roots, cplx z) {
    PolyJet j;
    for (const cplx& rk : roots) {
        const cplx lin = z - rk;
        j.d2p = j.d2p * lin + 2.0 * j.dp;
        j.dp = j.dp * lin + j.p;
        j.p = j.p * lin;
    }
    return j;
}

// a(r) of the radial gauge potential a(r) d(theta) tau1.
double radial_a(double nu, bool noncompact, double r) {
    const double r2nu = std::pow(r, 2.0 * nu);
    if (noncompact) return nu - 1.0 - 2.0 * nu * r2nu / (1.0 + r2nu);
    const double d = 1.0 - r2nu;
    if (d == 0.0) throw std::domain_error("liouville field singular on |z|^(2 nu) = 1");
    return nu - 1.0 + 2.0 * nu * r2nu / d;
}

}  // namespace

double lambda_monomial(double nu, LiouvilleBranch branch, double x, double y) {
    const double r = std::hypot(x, y);
    const double r2nu = std::pow(r, 2.0 * nu);
    const double d =
        branch == LiouvilleBranch::noncompact ? 1.0 + r2nu : 1.0 - r2nu;
    if (d == 0.0)
        throw std::domain_error("lambda_monomial singular on |z|^(2 nu) = 1");
    const double dxi = nu * std::pow(r, nu - 1.0);  // |xi'|
    return 4.0 * dxi * dxi / (d * d);
}

double lambda_polynomial(const std::vector<cplx>& roots, double x, double y) {
    const PolyJet j = poly_jet(roots, cplx(x, y));
    const double den = 1.0 + std::norm(j.p);
    return 4.0 * std::norm(j.dp) / (den * den);
}

AnsatzField liouville_pair_polar(double nu, LiouvilleBranch branch) {
    const bool nc = branch == LiouvilleBranch::noncompact;
    auto gh = [nu, branch](double x, double y) {
        return std::sqrt(lambda_monomial(nu, branch, x, y));
    };
    auto f1 = [nu, nc](double x, double y) {
        const double r2 = x * x + y * y;
        if (r2 == 0.0) throw std::domain_error("radial gauge undefined at the origin");
        return -radial_a(nu, nc, std::sqrt(r2)) * y / r2;
    };
    auto f2 = [nu, nc](double x, double y) {
        const double r2 = x * x + y * y;
        if (r2 == 0.0) throw std::domain_error("radial gauge undefined at the origin");
        return radial_a(nu, nc, std::sqrt(r2)) * x / r2;
    };
    return AnsatzField{nc ? kSo21 : kSu2, ScalarField(f1), ScalarField(f2),
                       ScalarField(gh), ScalarField(gh)};
}

AnsatzField multicenter_field(std::vector<cplx> roots) {
    auto rts = std::make_shared<const std::vector<cplx>>(std::move(roots));
    auto gh = [rts](double x, double y) {
        return std::sqrt(lambda_polynomial(*rts, x, y));
    };
    // d/dz ln g = xi'' / (2 xi') - xi' conj(xi) / (1 + |xi|^2), and
    // f2 = dx ln g = 2 Re, f1 = -dy ln g = 2 Im.
    auto dlng = [rts](double x, double y) -> cplx {
        const PolyJet j = poly_jet(*rts, cplx(x, y));
        if (j.dp == 0.0)
            throw std::domain_error("multicenter field undefined where xi'(z) = 0");
        return j.d2p / (2.0 * j.dp) - j.dp * std::conj(j.p) / (1.0 + std::norm(j.p));
    };
    auto f1 = [dlng](double x, double y) { return 2.0 * std::imag(dlng(x, y)); };
    auto f2 = [dlng](double x, double y) { return 2.0 * std::real(dlng(x, y)); };
    return AnsatzField{kSo21, ScalarField(f1), ScalarField(f2), ScalarField(gh),
                       ScalarField(gh)};
}

double flux_monomial_analytic(double nu) { return -4.0 * kPi * nu; }

QuadResult flux_monomial_quadrature(double nu) {
    // On solutions the tau1 curvature coefficient is -g h = -lambda, so the
    // flux is -2 pi int_0^inf lambda(r) r dr; compactify with r = tan t.
    auto f = [nu](double t) {
        const double r = std::tan(t);
        const double jac = 1.0 + r * r;
        return -2.0 * kPi * r * jac *
               lambda_monomial(nu, LiouvilleBranch::noncompact, r, 0.0);
    };
    return integrate_gk(f, 0.0, kPi / 2.0, 1e-12, 1e-12);
}

QuadResult flux_polynomial_quadrature(const std::vector<cplx>& roots) {
    auto f = [&roots](double x, double y) { return -lambda_polynomial(roots, x, y); };
    return integrate_plane(f, 1e-9, 1e-9);
}

LiouvillePatches patch_pair(double nu) {
    if (!(nu >= 1.0) || nu != std::floor(nu))
        throw std::invalid_argument(
            "patch_pair: nu must be a positive integer; otherwise exp(2 nu theta tau1) "
            "is not single-valued and the two patches cannot be glued");

    const Mat2 t1 = make_generators(kSo21)[0].matrix();
    const Mat2 t2 = make_generators(kSo21)[1].matrix();
    const Mat2 t3 = make_generators(kSo21)[2].matrix();

    const AnsatzField base = liouville_pair_polar(nu, LiouvilleBranch::noncompact);
    FourPotential raw;
    raw.sig = kSo21;
    raw.comp[0] = [f = base.f1, t1](double x, double y) { return f(x, y) * t1; };
    raw.comp[1] = [f = base.f2, t1](double x, double y) { return f(x, y) * t1; };
    raw.comp[2] = [f = base.g, t2](double x, double y) { return f(x, y) * t2; };
    raw.comp[3] = [f = base.h, t3](double x, double y) { return f(x, y) * t3; };

    // q = exp(c theta tau1) shifts the d(theta) coefficient by c and rotates
    // the Higgs pair; c = 1 - nu removes the origin singularity, c = 1 + nu
    // the one at infinity. Both c are integers, so each patch is
    // single-valued across the atan2 cut.
    auto rotate = [&raw, t1](double c) {
        return gauge_transform_exp(
            raw, t1, [c](double x, double y) { return c * std::atan2(y, x); },
            [c](double x, double y) -> std::array<double, 2> {
                const double r2 = x * x + y * y;
                return {-c * y / r2, c * x / r2};
            });
    };
    return LiouvillePatches{rotate(1.0 - nu), rotate(1.0 + nu), nu};
}

double patch_transition_defect(const LiouvillePatches& patches, double r,
                               double theta) {
    const double c = 2.0 * patches.nu;
    const Mat2 t1 = make_generators(kSo21)[0].matrix();
    const FourPotential moved = gauge_transform_exp(
        patches.origin, t1, [c](double x, double y) { return c * std::atan2(y, x); },
        [c](double x, double y) -> std::array<double, 2> {
            const double r2 = x * x + y * y;
            return {-c * y / r2, c * x / r2};
        });
    const double x = r * std::cos(theta);
    const double y = r * std::sin(theta);
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        const Mat2 diff = moved.comp[mu](x, y) - patches.infinity.comp[mu](x, y);
        worst = std::max(worst, frobenius_norm(diff));
    }
    return worst;
}

}  // namespace hitchin
