#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "hitchin/fields.hpp"
#include "hitchin/liouville.hpp"

using hitchin::LiouvilleBranch;

namespace {
const hitchin::FdOptions kFineFd{1e-6, 1e-3};
}

TEST_CASE("monomial conformal factor matches its closed form") {
    // lambda = 4 nu^2 r^{2 nu - 2} / (1 +- r^{2 nu})^2
    for (const double nu : {1.0, 2.0, 3.5}) {
        for (const double r : {0.3, 1.0, 2.4}) {
            const double up = std::pow(r, 2.0 * nu);
            const double want =
                4.0 * nu * nu * std::pow(r, 2.0 * nu - 2.0) / ((1.0 + up) * (1.0 + up));
            CHECK(hitchin::lambda_monomial(nu, LiouvilleBranch::noncompact, r, 0.0) ==
                  doctest::Approx(want).epsilon(1e-14));
        }
        // compact branch blows up on the unit circle
        CHECK_THROWS_AS(hitchin::lambda_monomial(nu, LiouvilleBranch::compact, 1.0, 0.0),
                        std::domain_error);
    }
    // rotational invariance
    CHECK(hitchin::lambda_monomial(2.0, LiouvilleBranch::noncompact, 0.6, 0.8) ==
          doctest::Approx(hitchin::lambda_monomial(2.0, LiouvilleBranch::noncompact,
                                                   1.0, 0.0)).epsilon(1e-13));
}

TEST_CASE("liouville equation lap(ln lambda) = s1 * 2 lambda") {
    // s1 = -1 on the noncompact branch (sphere metric, K = +1), so
    // lap ln lambda = -2 lambda there; +2 lambda on the compact branch
    const hitchin::FdOptions fd{1e-4, 1e-4};
    const auto check = [&fd](LiouvilleBranch br, double nu, double x, double y,
                             double sgn) {
        const hitchin::ScalarField lnl([br, nu](double u, double v) {
            return std::log(hitchin::lambda_monomial(nu, br, u, v));
        });
        const double lam = hitchin::lambda_monomial(nu, br, x, y);
        double lap = 0.0;
        const double h = fd.step_second;
        lap = (lnl(x + h, y) + lnl(x - h, y) + lnl(x, y + h) + lnl(x, y - h) -
               4.0 * lnl(x, y)) / (h * h);
        CHECK(lap == doctest::Approx(sgn * 2.0 * lam).epsilon(1e-5));
    };
    check(LiouvilleBranch::noncompact, 1.0, 0.8, 0.3, -1.0);
    check(LiouvilleBranch::noncompact, 2.0, 1.2, -0.5, -1.0);
    check(LiouvilleBranch::compact, 2.0, 0.5, 0.1, 1.0);
}

TEST_CASE("monomial pairs solve the reduction equations and are flat") {
    for (const double nu : {1.0, 2.0, 3.0}) {
        const auto field =
            hitchin::liouville_pair_polar(nu, LiouvilleBranch::noncompact);
        CHECK(field.sig == hitchin::kSo21);
        for (int i = 0; i < 24; ++i) {
            const double r = 0.3 * std::pow(10.0, i / 23.0);
            const double phi = 0.7 + 1.3 * i;
            const double x = r * std::cos(phi), y = r * std::sin(phi);
            CHECK(hitchin::hitchin_residual(field, x, y, kFineFd).max_abs() < 1e-8);
            CHECK(hitchin::flat_connection_residual(field, x, y, kFineFd) < 1e-8);
            CHECK(std::abs(hitchin::kappa_squared(field, x, y)) < 1e-12);
        }
    }
    // compact branch solves the same system over su(2), away from r = 1
    const auto cfield = hitchin::liouville_pair_polar(2.0, LiouvilleBranch::compact);
    CHECK(cfield.sig == hitchin::kSu2);
    for (const double r : {0.3, 0.7, 1.4, 3.0})
        CHECK(hitchin::hitchin_residual(cfield, r, 0.05, kFineFd).max_abs() < 1e-8);
}

TEST_CASE("gauge profile identities a = r (ln h)' and a'/r = s1 lambda") {
    const double nu = 2.0;
    const auto field = hitchin::liouville_pair_polar(nu, LiouvilleBranch::noncompact);
    const double h = 1e-5;
    for (const double r : {0.5, 1.0, 2.0}) {
        const double a = r * field.f2(r, 0.0);
        const double dlnh =
            (std::log(field.h(r + h, 0.0)) - std::log(field.h(r - h, 0.0))) / (2 * h);
        CHECK(a == doctest::Approx(r * dlnh).epsilon(1e-8));

        const double ap = (field.f2(r + h, 0.0) * (r + h) -
                           field.f2(r - h, 0.0) * (r - h)) / (2 * h);
        const double lam = hitchin::lambda_monomial(nu, LiouvilleBranch::noncompact,
                                                   r, 0.0);
        CHECK(ap / r == doctest::Approx(-lam).epsilon(1e-7));
    }
}

TEST_CASE("flux of the monomial solution is -4 pi nu") {
    for (const double nu : {1.0, 2.0, 3.0}) {
        const double analytic = hitchin::flux_monomial_analytic(nu);
        CHECK(analytic == doctest::Approx(-4.0 * M_PI * nu).epsilon(1e-15));
        const auto q = hitchin::flux_monomial_quadrature(nu);
        CHECK(q.converged);
        CHECK(std::abs(q.value - analytic) < 1e-8 * std::abs(analytic));
    }
}

TEST_CASE("multicenter solutions: residuals, critical points, flux") {
    const std::vector<std::complex<double>> roots = {{1.0, 0.0}, {-1.0, 0.5}};
    const auto field = hitchin::multicenter_field(roots);
    CHECK(field.sig == hitchin::kSo21);
    const double pts[][2] = {{0.4, 0.9}, {-1.6, 0.3}, {2.0, -1.0}, {0.1, -2.2}};
    for (const auto& p : pts) {
        CHECK(hitchin::hitchin_residual(field, p[0], p[1], kFineFd).max_abs() < 1e-8);
        CHECK(std::abs(hitchin::kappa_squared(field, p[0], p[1])) < 1e-12);
    }
    // xi' = 2z - (sum of roots) vanishes at the midpoint of the two roots;
    // the gauge profile f is undefined there (g itself just vanishes)
    CHECK_THROWS_AS(field.f1(0.0, 0.25), std::domain_error);
    CHECK(field.g(0.0, 0.25) < 1e-14);

    // total flux counts the degree of xi: -4 pi * 2 for two centers
    const auto q = hitchin::flux_polynomial_quadrature(roots);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(-8.0 * M_PI).epsilon(1e-6));
}

TEST_CASE("patch transition is the gauge rotation exp(2 theta nu t1)") {
    for (const double nu : {1.0, 2.0}) {
        const auto patches = hitchin::patch_pair(nu);
        for (int k = 0; k < 8; ++k) {
            const double theta = 2.0 * M_PI * k / 8.0 + 0.1;
            CHECK(hitchin::patch_transition_defect(patches, 1.0, theta) < 1e-10);
            // the identity is not specific to the unit circle
            CHECK(hitchin::patch_transition_defect(patches, 1.7, theta) < 1e-10);
        }
    }
    CHECK_THROWS_AS(hitchin::patch_pair(1.5), std::invalid_argument);
    CHECK_THROWS_AS(hitchin::patch_pair(0.0), std::invalid_argument);
    CHECK_THROWS_AS(hitchin::patch_pair(-2.0), std::invalid_argument);
}

TEST_CASE("single-valued monomials require the origin gauge charge 1 - nu") {
    // the origin patch potential must be regular: its angular component
    // carries a(0) - (1 - nu) ... = 0 winding.  Checked through the defect of
    // the reconstructed pair at small radius.
    const auto patches = hitchin::patch_pair(1.0);
    CHECK(patches.nu == 1.0);
    CHECK(hitchin::patch_transition_defect(patches, 0.05, 0.3) < 1e-8);
}
