#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "hitchin/theta.hpp"

using hitchin::CMat;
using hitchin::cplx;
using hitchin::CVec;
using hitchin::riemann_theta;

namespace {
const CMat kB1{{cplx(0.0, 1.0)}};  // genus 1, B = i

hitchin::SpectralData load_dataset() {
    return hitchin::load_spectral_data(DATASET_FILE);
}
}  // namespace

TEST_CASE("genus-1 values agree with 30-digit reference evaluations") {
    CHECK(std::abs(riemann_theta({cplx(0.0)}, kB1) -
                   cplx(1.08643481121330801458)) < 1e-14);
    CHECK(std::abs(riemann_theta({cplx(0.31, 0.07)}, kB1) -
                   cplx(0.96504934988560483175, -0.03648935555857267705)) < 1e-14);
    CHECK(std::abs(riemann_theta({cplx(-0.2, 0.55)}, kB1) -
                   cplx(1.42066713156814728905, 1.30285913454181874372)) < 1e-13);
    CHECK(std::abs(riemann_theta({cplx(0.0)}, CMat{{cplx(0.0, 2.0)}}) -
                   cplx(1.00373488548773909105)) < 1e-14);
}

TEST_CASE("genus-2 value agrees with a high-precision direct sum") {
    const CMat B{{cplx(0.0, 1.1), cplx(0.3, 0.2)}, {cplx(0.3, 0.2), cplx(0.0, 0.9)}};
    const CVec z{cplx(0.2, 0.1), cplx(-0.3, 0.05)};
    CHECK(std::abs(riemann_theta(z, B) -
                   cplx(0.98828919281242120260, 0.00977383057436254215)) < 1e-13);
}

TEST_CASE("series is 1-periodic and quasi-periodic under B shifts") {
    const CMat B{{cplx(0.0, 1.1), cplx(0.3, 0.2)}, {cplx(0.3, 0.2), cplx(0.0, 0.9)}};
    const CVec z{cplx(0.17, 0.21), cplx(-0.4, 0.1)};
    const cplx base = riemann_theta(z, B);
    for (int j = 0; j < 2; ++j) {
        CVec zp = z;
        zp[j] += 1.0;
        CHECK(std::abs(riemann_theta(zp, B) - base) < 1e-12);

        CVec zb = z;
        for (int k = 0; k < 2; ++k) zb[k] += B[k][j];
        const cplx factor =
            std::exp(cplx(0.0, -2.0 * M_PI) * (z[j] + 0.5 * B[j][j]));
        CHECK(std::abs(riemann_theta(zb, B) - factor * base) < 1e-10);
    }
}

TEST_CASE("theta vanishes at the odd half-period") {
    // z = (1 + B)/2 is the classical zero for genus 1
    CHECK(std::abs(riemann_theta({cplx(0.5, 0.5)}, kB1)) < 1e-14);
}

TEST_CASE("truncation radius is stable: enlarging it changes nothing") {
    const CVec z{cplx(0.31, 0.07)};
    const double r = hitchin::theta_truncation_radius(kB1, z, 1e-14);
    const cplx a = riemann_theta(z, kB1, r);
    const cplx b = riemann_theta(z, kB1, r + 2.0);
    CHECK(std::abs(a - b) < 1e-13);
    // slowly converging case: small Im B still sums accurately
    const CMat soft{{cplx(0.0, 0.1)}};
    const cplx direct = riemann_theta({cplx(0.0)}, soft);
    // theta3(0, e^{-pi/10}) via its own radius vs an enlarged one
    const double r2 = hitchin::theta_truncation_radius(soft, {cplx(0.0)}, 1e-14);
    CHECK(std::abs(direct - riemann_theta({cplx(0.0)}, soft, r2 + 3.0)) < 1e-12);
}

TEST_CASE("period matrix validation") {
    CHECK_THROWS_AS(riemann_theta({cplx(0.0)}, CMat{{cplx(0.0, -1.0)}}),
                    std::invalid_argument);  // Im B not positive definite
    const CMat asym{{cplx(0.0, 1.0), cplx(0.2, 0.1)}, {cplx(0.1, 0.1), cplx(0.0, 1.0)}};
    CHECK_THROWS_AS(riemann_theta({cplx(0.0), cplx(0.0)}, asym),
                    std::invalid_argument);
    const CMat rect{{cplx(0.0, 1.0), cplx(0.0, 0.0)}};
    CHECK_THROWS_AS(riemann_theta({cplx(0.0)}, rect), std::invalid_argument);
}

TEST_CASE("bundled spectral data parses with the documented values") {
    const auto d = load_dataset();
    CHECK(d.genus == 1);
    CHECK(hitchin::parameter_count(d) == 3);
    CHECK(d.B[0][0] == cplx(0.0, 1.0));
    CHECK(d.U[0] == cplx(1.0, 0.0));
    CHECK(d.V[0] == cplx(1.0, 0.0));
    CHECK(d.D[0] == cplx(0.0, 0.7));
    CHECK(d.kappa == doctest::Approx(0.99254417849105741948).epsilon(1e-16));
    CHECK(d.lattice1[0] == doctest::Approx(2.0 * M_PI).epsilon(1e-16));
    CHECK(d.lattice2[1] == 1.0);
}

TEST_CASE("dataset parser rejects malformed input") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return hitchin::parse_spectral_data(in);
    };
    const std::string good =
        "genus=1\nB=0,1\nU=1,0\nV=1,0\nD=0,0.7\nkappa=1.0\n"
        "lattice1=6.28,0\nlattice2=0,1\n";
    CHECK_NOTHROW(parse(good));
    CHECK_THROWS(parse(""));                                  // nothing at all
    CHECK_THROWS(parse("genus=0\n" + good.substr(8)));        // genus < 1
    CHECK_THROWS(parse(good + "genus=1\n"));                  // duplicate key
    CHECK_THROWS(parse("genus=1\nB=0,1\nU=1,0\nV=1,0\nD=0.2,0.7\nkappa=1\n"
                       "lattice1=6.28,0\nlattice2=0,1\n"));   // D not imaginary
    CHECK_THROWS(parse("genus=1\nB=0,1\nU=1,0\nV=1,0\nD=0,0.7\nkappa=-1\n"
                       "lattice1=6.28,0\nlattice2=0,1\n"));   // kappa <= 0
    CHECK_THROWS(parse("genus=1\nB=0,1\nU=1,0\nV=1,0\nD=0,0.7\nkappa=1\n"
                       "lattice1=6.28,0\nlattice2=12.56,0\n"));  // degenerate cell
    CHECK_THROWS(parse("genus=1\nB=0,-1\nU=1,0\nV=1,0\nD=0,0.7\nkappa=1\n"
                       "lattice1=6.28,0\nlattice2=0,1\n"));   // Im B < 0
    CHECK_THROWS(parse("genus=1\nB=0,1\nU=1,0\nV=1,0\nD=0,0.7\nkappa=1\n"
                       "lattice1=6.28,0\n"));                 // missing key
}

TEST_CASE("solution profile matches reference values and is y-independent") {
    const auto d = load_dataset();
    const struct {
        double x, want;
    } table[] = {
        {0.0, 0.13240022857411031839},
        {0.3, 0.15954743015393194870},
        {1.7, 0.09346256534628615689},
        {4.0, -0.17110659434372166171},
    };
    for (const auto& row : table) {
        CHECK(std::abs(hitchin::dp_solution(d, row.x, 0.0) - row.want) < 1e-13);
        CHECK(std::abs(hitchin::dp_solution(d, row.x, 0.123) - row.want) < 1e-13);
    }
    // amplitude of the profile is ln(2)/4 at the crest x = 0.7
    CHECK(hitchin::dp_solution(d, 0.7, 0.0) ==
          doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-14));
}

TEST_CASE("double periodicity of the constructed solution") {
    const auto d = load_dataset();
    CHECK(hitchin::periodicity_defect(d) < 1e-12);
}

TEST_CASE("reality violation is rejected") {
    auto d = load_dataset();
    d.V[0] = cplx(-1.0, 0.0);  // V != conj(U) breaks the reality condition
    CHECK_THROWS_AS(hitchin::dp_solution(d, 0.3, 0.1), std::runtime_error);
}

TEST_CASE("constant data gives the constant solution") {
    auto d = load_dataset();
    d.U[0] = d.V[0] = cplx(0.0, 0.0);
    const double v0 = hitchin::dp_solution(d, 0.0, 0.0);
    for (const auto& p : {std::pair{1.0, 0.3}, {-2.0, 0.8}, {5.0, -0.2}})
        CHECK(hitchin::dp_solution(d, p.first, p.second) ==
              doctest::Approx(v0).epsilon(1e-14));
}

TEST_CASE("grid residual of the bundled solution is at the FD floor") {
    const auto d = load_dataset();
    const auto alpha = [&d](double x, double y) {
        return hitchin::dp_solution(d, x, y);
    };
    const auto g1024 =
        hitchin::sample_torus(alpha, d.lattice1, d.lattice2, 1024, 16);
    CHECK(hitchin::pde_residual_grid(g1024, d.kappa) < 1e-6);

    // second-order convergence: halving the spacing quarters the residual
    const auto g256 = hitchin::sample_torus(alpha, d.lattice1, d.lattice2, 256, 16);
    const auto g512 = hitchin::sample_torus(alpha, d.lattice1, d.lattice2, 512, 16);
    const double r256 = hitchin::pde_residual_grid(g256, d.kappa);
    const double r512 = hitchin::pde_residual_grid(g512, d.kappa);
    CHECK(r256 / r512 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("grid validation") {
    const auto d = load_dataset();
    const auto alpha = [](double, double) { return 0.0; };
    // sampling a coarse grid is fine; the laplacian stencil is what needs
    // density, so the size gate lives in the residual
    const auto coarse = hitchin::sample_torus(alpha, d.lattice1, d.lattice2, 8, 16);
    CHECK_THROWS_AS(hitchin::pde_residual_grid(coarse, d.kappa),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        hitchin::sample_torus(alpha, d.lattice1, d.lattice2, 0, 16),
        std::invalid_argument);
    hitchin::TorusGrid g;
    g.lattice1 = {1.0, 0.0};
    g.lattice2 = {0.0, 1.0};
    g.nx = 16;
    g.ny = 16;
    g.alpha.assign(16, 0.0);  // wrong size
    CHECK_THROWS_AS(hitchin::pde_residual_grid(g, 1.0), std::invalid_argument);
}

TEST_CASE("libration period: reference values and the small-swing limit") {
    CHECK(hitchin::libration_period(0.5, 1.0) ==
          doctest::Approx(5.9116112950767750501).epsilon(1e-13));
    CHECK(hitchin::libration_period(1.0, 1.0) ==
          doctest::Approx(4.9992270434639807053).epsilon(1e-13));
    CHECK(hitchin::libration_period(0.0, 1.0) ==
          doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(hitchin::libration_period(1e-6, 1.0) ==
          doctest::Approx(2.0 * M_PI).epsilon(1e-9));
    // stiffer-than-linear restoring force: period decreases with amplitude
    CHECK(hitchin::libration_period(0.5, 1.0) < 2.0 * M_PI);
    CHECK(hitchin::libration_period(1.0, 1.0) <
          hitchin::libration_period(0.5, 1.0));
    // scale invariance L(a0, kappa) = L(a0, 1)/kappa
    CHECK(hitchin::libration_period(0.5, 2.0) ==
          doctest::Approx(0.5 * 5.9116112950767750501).epsilon(1e-13));
    CHECK_THROWS_AS(hitchin::libration_period(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("libration profile conserves energy and closes periodically") {
    const double a0 = 0.8, kappa = 1.3;
    const auto prof = hitchin::libration_profile(a0, kappa);
    const double e0 = 0.25 * kappa * kappa * std::cosh(2.0 * a0);
    for (const auto& s : prof.samples) {
        const double e = 0.5 * s[2] * s[2] +
                         0.25 * kappa * kappa * std::cosh(2.0 * s[1]);
        CHECK(std::abs(e - e0) < 1e-10);
    }
    CHECK(prof.alpha(0.0) == doctest::Approx(a0).epsilon(1e-12));
    // half-period reflection and full-period closure
    CHECK(prof.alpha(0.5 * prof.period) == doctest::Approx(-a0).epsilon(1e-10));
    CHECK(prof.alpha(prof.period + 0.37) ==
          doctest::Approx(prof.alpha(0.37)).epsilon(1e-10));
    // time-reversal symmetry about the turning point
    CHECK(prof.alpha(prof.period - 0.41) ==
          doctest::Approx(prof.alpha(0.41)).epsilon(1e-9));
}

TEST_CASE("libration fields satisfy the elliptic equation on the torus") {
    const double a0 = 0.15, kappa = 1.0;
    const auto prof = hitchin::libration_profile(a0, kappa);
    const std::array<double, 2> l1{prof.period, 0.0};
    const std::array<double, 2> l2{0.0, 1.0};
    const auto alpha = [&prof](double x, double) { return prof.alpha(x); };
    const auto grid = hitchin::sample_torus(alpha, l1, l2, 256, 16);
    CHECK(hitchin::pde_residual_grid(grid, kappa) < 1e-5);
}

TEST_CASE("dataset, libration oracle and lattice agree exactly") {
    // the bundled profile is the libration orbit with amplitude ln(2)/4, and
    // its period must be the first lattice vector length 2 pi
    const auto d = load_dataset();
    const double a0 = std::log(2.0) / 4.0;
    CHECK(hitchin::libration_period(a0, d.kappa) ==
          doctest::Approx(2.0 * M_PI).epsilon(1e-13));

    // pointwise: the crest sits at x = 0.7 and the orbit runs leftward in x
    const auto prof = hitchin::libration_profile(a0, d.kappa);
    for (const double t : {0.3, 1.1, 2.4, 3.9}) {
        const double from_theta = hitchin::dp_solution(d, 0.7 - t, 0.0);
        CHECK(prof.alpha(t) == doctest::Approx(from_theta).epsilon(1e-10));
        const double mirrored = hitchin::dp_solution(d, 0.7 + t, 0.0);
        CHECK(prof.alpha(t) == doctest::Approx(mirrored).epsilon(1e-10));
    }
}
