// Command-line front end: construct, integrate and verify solutions of the
// dimensionally reduced self-dual Yang-Mills system for the real forms of
// sl(2,C).  Subcommands:
//
//   algebra-check   generator brackets and Killing form for all signatures
//   liouville       exact zero-kappa solutions (Liouville equation), flux
//   sinh            radial sinh-Gordon solutions (Painleve III transcendents)
//   sine            radial sine-Gordon solutions
//   torus           quasi-periodic solutions from genus-g spectral data
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure (divergence,
// failed verification, non-converged quadrature).
//
// Options may also be supplied through a key=value config file (--config);
// command-line flags take precedence over config-file values.  Relative
// output paths are resolved against $HITCHIN_OUTPUT_DIR when it is set.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hitchin/algebra.hpp"
#include "hitchin/fields.hpp"
#include "hitchin/liouville.hpp"
#include "hitchin/radial.hpp"
#include "hitchin/theta.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

std::string resolve_output_path(const std::string& path) {
    const char* dir = std::getenv("HITCHIN_OUTPUT_DIR");
    if (dir == nullptr || *dir == '\0' || std::filesystem::path(path).is_absolute())
        return path;
    return (std::filesystem::path(dir) / path).string();
}

struct CsvFile {
    explicit CsvFile(const std::string& path)
        : handle_(std::fopen(path.c_str(), "wb")), path_(path) {
        if (handle_ == nullptr)
            throw std::invalid_argument("cannot open output file: " + path);
    }
    ~CsvFile() {
        if (handle_ != nullptr) std::fclose(handle_);
    }
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    void header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i)
            std::fprintf(handle_, i == 0 ? "%s" : ",%s", names[i].c_str());
        std::fputc('\n', handle_);
    }
    // 17 significant digits round-trips IEEE doubles exactly, so repeated
    // runs of the same command produce byte-identical files.
    void row(const std::vector<double>& vals) {
        char buf[40];
        for (std::size_t i = 0; i < vals.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
            std::fprintf(handle_, i == 0 ? "%s" : ",%s", buf);
        }
        std::fputc('\n', handle_);
    }
    const std::string& path() const { return path_; }

  private:
    std::FILE* handle_;
    std::string path_;
};

hitchin::RealFormSignature parse_signature(const std::string& text) {
    if (text == "0,0" || text == "su2") return {0, 0};
    if (text == "1,0") return {1, 0};
    if (text == "0,1") return {0, 1};
    if (text == "1,1") return {1, 1};
    throw std::invalid_argument("unknown signature '" + text +
                                "' (expected one of 0,0 1,0 0,1 1,1)");
}

// --- algebra-check ---------------------------------------------------------

int run_algebra_check(const std::string& only_sig) {
    const hitchin::RealFormSignature sigs[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    std::printf("generator check: [t2,t3] = s1 t1, [t3,t1] = s2 t2, [t1,t2] = t3,"
                " s1 = (-1)^n1, s2 = (-1)^n2\n");
    std::printf("Killing table: tr(ti tj) = -(1/2) diag(g)\n\n");
    std::printf("%-6s %-4s %-4s %-22s %-12s %s\n", "(n1,n2)", "s1", "s2",
                "diag(g)", "bracket defect", "result");
    bool all_ok = true;
    for (const auto& sig : sigs) {
        if (!only_sig.empty() && !(parse_signature(only_sig) == sig)) continue;
        const auto tau = hitchin::make_generators(sig);
        double defect = 0.0;
        // [t2,t3] - s1 t1
        defect = std::max(defect, hitchin::frobenius_norm(
            hitchin::bracket(tau[1], tau[2]).matrix() - sig.s1() * tau[0].matrix()));
        // [t3,t1] - s2 t2
        defect = std::max(defect, hitchin::frobenius_norm(
            hitchin::bracket(tau[2], tau[0]).matrix() - sig.s2() * tau[1].matrix()));
        // [t1,t2] - t3
        defect = std::max(defect, hitchin::frobenius_norm(
            hitchin::bracket(tau[0], tau[1]).matrix() - tau[2].matrix()));
        const auto g = hitchin::killing_metric(sig);
        const bool ok = defect < 1e-14;
        all_ok = all_ok && ok;
        std::printf("(%d,%d)  %+.0f   %+.0f   (%+.0f, %+.0f, %+.0f)%8s %-10.3g %s\n",
                    sig.n1, sig.n2, sig.s1(), sig.s2(), g[0], g[1], g[2], "",
                    defect, ok ? "PASS" : "FAIL");
    }
    return all_ok ? kExitOk : kExitNumerical;
}

// --- liouville --------------------------------------------------------------

struct LiouvilleOpts {
    double nu = 1.0;
    std::string branch = "top";
    double r_lo = 1e-5;
    double r_hi = 1e3;
    int points = 200;
    std::string output = "liouville.csv";
};

int run_liouville(const LiouvilleOpts& opt) {
    if (opt.nu <= 0.0) throw std::invalid_argument("--nu must be positive");
    if (opt.points < 16) throw std::invalid_argument("--points must be at least 16");
    hitchin::LiouvilleBranch branch;
    if (opt.branch == "top")
        branch = hitchin::LiouvilleBranch::noncompact;
    else if (opt.branch == "bottom")
        branch = hitchin::LiouvilleBranch::compact;
    else
        throw std::invalid_argument("--branch must be 'top' or 'bottom'");

    const auto field = hitchin::liouville_pair_polar(opt.nu, branch);

    CsvFile csv(resolve_output_path(opt.output));
    csv.header({"r", "g", "a_theta", "lambda"});
    const double ratio = opt.r_hi / opt.r_lo;
    std::vector<std::array<double, 2>> g_samples;
    g_samples.reserve(static_cast<std::size_t>(opt.points));
    for (int i = 0; i < opt.points; ++i) {
        const double r = opt.r_lo *
            std::pow(ratio, static_cast<double>(i) / (opt.points - 1));
        const double lam = hitchin::lambda_monomial(opt.nu, branch, r, 0.0);
        const double g = field.g(r, 0.0);
        const double a = r * field.f2(r, 0.0);  // f2 = a(r) x / r^2 on the axis
        csv.row({r, g, a, lam});
        g_samples.push_back({r, g});
    }

    // residuals at interior points away from the origin and the FD stencil;
    // first-derivative step 1e-6 keeps the truncation error of the 1/r^2
    // gauge-potential profiles below the verification target
    const hitchin::FdOptions fd{1e-6, 1e-3};
    double max_hitchin = 0.0, max_flat = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = 0.3 * std::pow(10.0, static_cast<double>(i) / 99.0);
        const double phi = 0.61803398874989484 * 2.0 * M_PI * i;
        const double x = r * std::cos(phi), y = r * std::sin(phi);
        max_hitchin = std::max(max_hitchin,
                               hitchin::hitchin_residual(field, x, y, fd).max_abs());
        max_flat = std::max(max_flat,
                            hitchin::flat_connection_residual(field, x, y, fd));
    }

    std::printf("# liouville solution lambda = 4|xi'|^2/(1 %s |xi|^2)^2, xi = z^nu,"
                " nu=%g (%s sign)\n",
                branch == hitchin::LiouvilleBranch::noncompact ? "+" : "-", opt.nu,
                opt.branch.c_str());
    std::printf("# csv: %s (%d rows)\n", csv.path().c_str(), opt.points);
    std::printf("max reduction residual      %.3e   (100 points, 0.3 <= r <= 3)\n",
                max_hitchin);
    std::printf("max flatness residual       %.3e\n", max_flat);

    const double analytic = hitchin::flux_monomial_analytic(opt.nu);
    const auto quad = hitchin::flux_monomial_quadrature(opt.nu);
    std::printf("flux  analytic -4 pi nu   = %.15g\n", analytic);
    std::printf("flux  quadrature          = %.15g  (err est %.1e)\n", quad.value,
                quad.error_estimate);

    const auto action = hitchin::reduced_action_radial(g_samples, field.sig);
    std::printf("reduced action derivative S' = boundary difference = %.3e\n",
                action.value);

    if (!quad.converged) {
        std::printf("FAIL flux quadrature did not converge\n");
        return kExitNumerical;
    }
    const double rel = std::abs(quad.value - analytic) / std::abs(analytic);
    std::printf("flux relative deviation     %.3e\n", rel);
    return kExitOk;
}

// --- sinh / sine ------------------------------------------------------------

struct RadialOpts {
    double a = 1.0;
    double kappa = 1.0;
    double r0 = 1e-3;
    double r_max = 200.0;
    double tol = 1e-10;
    std::string sign = "top";
    std::string output;
};

hitchin::RadialProblem make_problem(const RadialOpts& opt, hitchin::RadialKind kind) {
    hitchin::RadialProblem p;
    p.kind = kind;
    if (opt.sign == "top")
        p.sign = hitchin::RadialSign::top;
    else if (opt.sign == "bottom")
        p.sign = hitchin::RadialSign::bottom;
    else
        throw std::invalid_argument("--sign must be 'top' or 'bottom'");
    p.kappa = opt.kappa;
    p.a = opt.a;
    p.r0 = opt.r0;
    p.r_max = opt.r_max;
    p.tol = opt.tol;
    return p;
}

void write_radial_csv(CsvFile& csv, const hitchin::RadialSolution& sol) {
    csv.header({"r", "alpha", "dalpha", "sigma", "cumulative_action", "F12",
                "J_theta"});
    for (const auto& s : sol.samples) {
        const auto obs = hitchin::observables_at(sol.problem, s.r, s.alpha, s.dalpha);
        csv.row({s.r, s.alpha, s.dalpha, obs.sigma, obs.cumulative_action, obs.f12,
                 obs.j_theta});
    }
}

int report_divergence(const hitchin::RadialSolution& sol) {
    std::printf("solution diverges: |alpha| exceeded 50 at r = %.6g"
                " (no smooth continuation past this radius)\n",
                sol.blow_up_radius);
    return kExitNumerical;
}

int run_radial(const RadialOpts& opt, hitchin::RadialKind kind) {
    const bool is_sinh = kind == hitchin::RadialKind::sinh_gordon;
    const auto problem = make_problem(opt, kind);
    const auto sol = hitchin::integrate_radial(problem);

    std::string out = opt.output.empty() ? (is_sinh ? "sinh.csv" : "sine.csv")
                                         : opt.output;
    CsvFile csv(resolve_output_path(out));
    write_radial_csv(csv, sol);

    std::printf("# radial %s-Gordon equation alpha'' + alpha'/r %s (kappa^2/2) %s(2 alpha) = 0\n",
                is_sinh ? "sinh" : "sine",
                hitchin::radial_signature(problem).s1() < 0 ? "+" : "-",
                is_sinh ? "sinh" : "sin");
    std::printf("# a=%g kappa=%g r0=%g r_max=%g tol=%g sign=%s\n", opt.a, opt.kappa,
                opt.r0, opt.r_max, opt.tol, opt.sign.c_str());
    std::printf("# csv: %s (%zu rows)\n", csv.path().c_str(), sol.samples.size());
    if (sol.diverged) return report_divergence(sol);

    std::printf("max Painleve III defect     %.3e\n",
                hitchin::max_painleve_residual(sol));

    if (is_sinh && problem.sign == hitchin::RadialSign::top && opt.a != 0.0 &&
        opt.kappa * opt.r_max >= 50.0) {
        const auto fit = hitchin::fit_tail(sol);
        const auto exact = hitchin::exact_asymptotics(opt.a, opt.kappa);
        std::printf("tail model alpha ~ c sin(kappa r + (c^2/4) ln(kappa r) - theta0)"
                    " / sqrt(kappa r) on [%g, %g]\n", fit.r_lo, fit.r_hi);
        std::printf("  fitted       c = %.6f   theta0 = %.6f  (rms %.2e)\n", fit.c,
                    fit.theta0, fit.fit_residual);
        std::printf("  closed form  c = %.6f   theta0 = %.6f\n", exact.c,
                    exact.theta0);
        std::printf("  c from (4/pi) ln cosh a; theta0 from -(c^2/2) ln 2 - pi/4"
                    " + arg Gamma(i c^2/4) + (pi/2) sign(a)\n");

        // frequency of the action integrand w(r) = r sinh(2 alpha) alpha',
        // which oscillates at 2 kappa in the tail
        std::vector<std::array<double, 2>> w;
        for (const auto& s : sol.samples)
            if (s.r >= fit.r_lo)
                w.push_back({s.r, s.r * std::sinh(2.0 * s.alpha) * s.dalpha});
        const double freq = hitchin::oscillation_frequency(w);
        std::printf("  action integrand frequency %.6f  (2 kappa = %g)\n", freq,
                    2.0 * opt.kappa);
    } else if (!is_sinh) {
        double lo = 0.0, hi = 0.0;
        for (const auto& s : sol.samples) {
            if (s.r >= 1.0 && s.r <= 10.0) lo = std::max(lo, std::abs(s.alpha));
            if (s.r >= 100.0 && s.r <= 200.0) hi = std::max(hi, std::abs(s.alpha));
        }
        std::printf("max |alpha| on [1,10]       %.6f\n", lo);
        std::printf("max |alpha| on [100,200]    %.6f  (non-localized tail)\n", hi);
    }
    return kExitOk;
}

// --- torus ------------------------------------------------------------------

struct TorusOpts {
    std::string data;
    int nx = 256;
    int ny = 16;
    std::string output = "torus.csv";
};

int run_torus(const TorusOpts& opt) {
    hitchin::SpectralData data;
    try {
        data = hitchin::load_spectral_data(opt.data);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }

    std::printf("# quasi-periodic solution from genus-%d spectral data (%s)\n",
                data.genus, opt.data.c_str());
    std::printf("independent real parameters 3g = %d\n",
                hitchin::parameter_count(data));

    // theta-function identities with the dataset's period matrix
    const hitchin::CVec z0(static_cast<std::size_t>(data.genus),
                           hitchin::cplx(0.31, 0.07));
    double theta_defect = 0.0;
    const hitchin::cplx base = hitchin::riemann_theta(z0, data.B);
    for (int j = 0; j < data.genus; ++j) {
        auto zp = z0;
        zp[j] += 1.0;  // theta(z + e_j) = theta(z)
        theta_defect = std::max(theta_defect,
                                std::abs(hitchin::riemann_theta(zp, data.B) - base));
        auto zb = z0;  // theta(z + B e_j) = exp(-2 pi i (z_j + B_jj/2)) theta(z)
        for (int k = 0; k < data.genus; ++k) zb[k] += data.B[k][j];
        const hitchin::cplx factor = std::exp(
            hitchin::cplx(0.0, -2.0 * M_PI) * (z0[j] + 0.5 * data.B[j][j]));
        theta_defect = std::max(
            theta_defect,
            std::abs(hitchin::riemann_theta(zb, data.B) - factor * base));
    }
    std::printf("theta identity defect       %.3e\n", theta_defect);

    double per = 0.0;
    hitchin::TorusGrid grid;
    try {
        per = hitchin::periodicity_defect(data);
        const auto alpha = [&data](double x, double y) {
            return hitchin::dp_solution(data, x, y);
        };
        grid = hitchin::sample_torus(alpha, data.lattice1, data.lattice2, opt.nx,
                                     opt.ny);
    } catch (const std::runtime_error& e) {
        // non-real log-ratio: the spectral data is internally inconsistent
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
    std::printf("lattice periodicity defect  %.3e\n", per);
    const double res = hitchin::pde_residual_grid(grid, data.kappa);
    std::printf("elliptic sinh-Gordon residual on %dx%d grid  %.3e\n", opt.nx,
                opt.ny, res);

    CsvFile csv(resolve_output_path(opt.output));
    csv.header({"x", "y", "alpha"});
    for (int j = 0; j < opt.ny; ++j)
        for (int i = 0; i < opt.nx; ++i) {
            const double s = static_cast<double>(i) / opt.nx;
            const double t = static_cast<double>(j) / opt.ny;
            const double x = s * grid.lattice1[0] + t * grid.lattice2[0];
            const double y = s * grid.lattice1[1] + t * grid.lattice2[1];
            csv.row({x, y, grid.alpha[static_cast<std::size_t>(j) *
                                          static_cast<std::size_t>(opt.nx) +
                                      static_cast<std::size_t>(i)]});
        }
    std::printf("# csv: %s (%d rows)\n", csv.path().c_str(), opt.nx * opt.ny);

    const bool ok = theta_defect < 1e-10 && per < 1e-8 && res < 1e-4;
    if (!ok) std::printf("FAIL verification thresholds exceeded\n");
    return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduced self-dual Yang-Mills solutions for the real forms of sl(2,C)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file with option defaults");

    std::string sig_text;
    auto* ca = app.add_subcommand("algebra-check",
                                  "verify generator brackets and Killing form for"
                                  " all four signatures");
    ca->add_option("--sig", sig_text, "restrict the table to one signature n1,n2");

    LiouvilleOpts liou;
    auto* cl = app.add_subcommand("liouville",
                                  "exact zero-kappa solutions and their flux");
    cl->add_option("--nu", liou.nu, "monomial exponent of xi = z^nu");
    cl->add_option("--branch", liou.branch, "'top' (noncompact) or 'bottom'");
    cl->add_option("--r-lo", liou.r_lo, "smallest sampled radius");
    cl->add_option("--r-hi", liou.r_hi, "largest sampled radius");
    cl->add_option("--points", liou.points, "number of CSV rows");
    cl->add_option("--output,-o", liou.output, "CSV output path");

    RadialOpts ropt[2];
    const char* names[2] = {"sinh", "sine"};
    const char* blurbs[2] = {
        "radial sinh-Gordon solutions via the Painleve III transcendent",
        "radial sine-Gordon solutions via the Painleve III transcendent"};
    CLI::App* subs[2];
    for (int k = 0; k < 2; ++k) {
        ropt[k].a = k == 0 ? -4.0 : 3.0 * M_PI / 4.0;
        auto* s = app.add_subcommand(names[k], blurbs[k]);
        s->add_option("--a", ropt[k].a, "seed amplitude alpha(r) ~ a + O(r^2)");
        s->add_option("--kappa", ropt[k].kappa, "mass scale kappa > 0");
        s->add_option("--r0", ropt[k].r0, "matching radius for the series seed");
        s->add_option("--r-max", ropt[k].r_max, "integration endpoint");
        s->add_option("--tol", ropt[k].tol, "relative tolerance of the integrator");
        if (k == 0)
            s->add_option("--sign", ropt[k].sign,
                          "'top' (oscillatory decay) or 'bottom' (generic blow-up)");
        s->add_option("--output,-o", ropt[k].output, "CSV output path");
        subs[k] = s;
    }

    TorusOpts topt;
    auto* ct = app.add_subcommand("torus",
                                  "quasi-periodic solutions from spectral data");
    ct->add_option("--data", topt.data, "spectral data file")->required();
    ct->add_option("--nx", topt.nx, "grid points along the first lattice vector");
    ct->add_option("--ny", topt.ny, "grid points along the second lattice vector");
    ct->add_option("--output,-o", topt.output, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ca->parsed()) return run_algebra_check(sig_text);
        if (cl->parsed()) return run_liouville(liou);
        if (subs[0]->parsed()) return run_radial(ropt[0], hitchin::RadialKind::sinh_gordon);
        if (subs[1]->parsed()) return run_radial(ropt[1], hitchin::RadialKind::sine_gordon);
        if (ct->parsed()) return run_torus(topt);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}
