#include "hitchin/theta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hitchin/ode.hpp"
#include "hitchin/quadrature.hpp"

namespace hitchin {

namespace {

constexpr double kPi = 3.14159265358979323846;

using RMat = std::vector<std::vector<double>>;

// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
std::vector<double> sym_eigenvalues(RMat m) {
    const std::size_t n = m.size();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diag += std::abs(m[i][i]);
            for (std::size_t j = i + 1; j < n; ++j) off += std::abs(m[i][j]);
        }
        if (off <= 1e-15 * (diag + off)) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (m[p][q] == 0.0) continue;
                const double phi =
                    0.5 * std::atan2(2.0 * m[p][q], m[q][q] - m[p][p]);
                const double c = std::cos(phi), s = std::sin(phi);
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m[k][p], akq = m[k][q];
                    m[k][p] = c * akp - s * akq;
                    m[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m[p][k], aqk = m[q][k];
                    m[p][k] = c * apk - s * aqk;
                    m[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m[i][i];
    return ev;
}

// Gaussian elimination with partial pivoting; n is tiny (the genus).
std::vector<double> solve_linear(RMat a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        if (a[col][col] == 0.0)
            throw std::invalid_argument("singular matrix in theta evaluation");
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

struct CheckedB {
    std::size_t g = 0;
    RMat y;          // Im B, symmetrized
    double mu = 0.0;  // smallest eigenvalue of y
};

CheckedB check_riemann_matrix(const CMat& B) {
    const std::size_t g = B.size();
    if (g == 0) throw std::invalid_argument("riemann matrix must be nonempty");
    double scale = 0.0;
    for (const auto& row : B) {
        if (row.size() != g)
            throw std::invalid_argument("riemann matrix must be square");
        for (const cplx& e : row) scale = std::max(scale, std::abs(e));
    }
    CheckedB cb;
    cb.g = g;
    cb.y.assign(g, std::vector<double>(g, 0.0));
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            if (std::abs(B[i][j] - B[j][i]) > 1e-12 * std::max(1.0, scale))
                throw std::invalid_argument("riemann matrix must be symmetric");
            cb.y[i][j] = 0.5 * (B[i][j].imag() + B[j][i].imag());
        }
    }
    const std::vector<double> ev = sym_eigenvalues(cb.y);
    cb.mu = *std::min_element(ev.begin(), ev.end());
    if (!(cb.mu > 0.0))
        throw std::invalid_argument(
            "imaginary part of the riemann matrix must be positive definite "
            "(theta series diverges otherwise)");
    return cb;
}

std::vector<double> theta_peak(const CheckedB& cb, const CVec& z) {
    std::vector<double> rhs(cb.g);
    for (std::size_t j = 0; j < cb.g; ++j) rhs[j] = -z[j].imag();
    return solve_linear(cb.y, rhs);
}

}  // namespace

double theta_truncation_radius(const CMat& B, const CVec& z, double tol) {
    const CheckedB cb = check_riemann_matrix(B);
    if (z.size() != cb.g)
        throw std::invalid_argument("theta argument has wrong dimension");
    if (!(tol > 0.0) || !(tol < 1.0))
        throw std::invalid_argument("truncation tolerance must be in (0, 1)");
    // Tail of sum exp(-pi mu ||n - n*||^2) over ||n - n*|| > R, with a margin
    // for the number of near-boundary lattice points.
    const double g = static_cast<double>(cb.g);
    return std::sqrt((std::log(1.0 / tol) + 2.0 * g + 3.0) / (kPi * cb.mu)) +
           std::sqrt(g);
}

cplx riemann_theta(const CVec& z, const CMat& B, double trunc_radius) {
    const CheckedB cb = check_riemann_matrix(B);
    const std::size_t g = cb.g;
    if (z.size() != g)
        throw std::invalid_argument("theta argument has wrong dimension");
    if (!(trunc_radius > 0.0))
        throw std::invalid_argument("truncation radius must be positive");

    const std::vector<double> center = theta_peak(cb, z);
    std::vector<long> lo(g), hi(g), n(g);
    for (std::size_t j = 0; j < g; ++j) {
        lo[j] = std::lround(std::ceil(center[j] - trunc_radius));
        hi[j] = std::lround(std::floor(center[j] + trunc_radius));
        const long c = std::lround(center[j]);
        lo[j] = std::min(lo[j], c);
        hi[j] = std::max(hi[j], c);
        n[j] = lo[j];
    }

    const double r2 = trunc_radius * trunc_radius;
    cplx acc = 0.0;
    for (;;) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < g; ++j) {
            const double d = static_cast<double>(n[j]) - center[j];
            d2 += d * d;
        }
        if (d2 <= r2) {
            cplx q = 0.0, l = 0.0;
            for (std::size_t i = 0; i < g; ++i) {
                const double ni = static_cast<double>(n[i]);
                l += ni * z[i];
                for (std::size_t j = 0; j < g; ++j)
                    q += ni * B[i][j] * static_cast<double>(n[j]);
            }
            acc += std::exp(cplx(0.0, kPi) * q + cplx(0.0, 2.0 * kPi) * l);
        }
        // odometer over the box
        std::size_t j = 0;
        while (j < g && ++n[j] > hi[j]) {
            n[j] = lo[j];
            ++j;
        }
        if (j == g) break;
    }
    return acc;
}

cplx riemann_theta(const CVec& z, const CMat& B) {
    return riemann_theta(z, B, theta_truncation_radius(B, z, 1e-14));
}

namespace {

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<cplx> parse_complex_list(const std::string& s, const std::string& key) {
    std::vector<cplx> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        double re = 0.0, im = 0.0;
        int used = 0;
        if (std::sscanf(tok.c_str(), "%lf,%lf%n", &re, &im, &used) != 2 ||
            used != static_cast<int>(tok.size()))
            throw std::runtime_error("dataset key '" + key + "': bad entry '" + tok +
                                     "' (expected re,im)");
        out.emplace_back(re, im);
    }
    if (out.empty())
        throw std::runtime_error("dataset key '" + key + "': no entries");
    return out;
}

const std::string& require(const std::map<std::string, std::string>& kv,
                           const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error("dataset missing key '" + key + "'");
    return it->second;
}

}  // namespace

SpectralData parse_spectral_data(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("dataset line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trimmed(line.substr(0, eq));
        if (kv.count(key))
            throw std::runtime_error("dataset key '" + key + "' given twice");
        kv[key] = trimmed(line.substr(eq + 1));
    }

    SpectralData d;
    {
        const std::string& gs = require(kv, "genus");
        std::size_t used = 0;
        d.genus = std::stoi(gs, &used);
        if (used != gs.size() || d.genus < 1)
            throw std::runtime_error("dataset key 'genus': want an integer >= 1");
    }
    const std::size_t g = static_cast<std::size_t>(d.genus);

    const std::vector<cplx> bflat = parse_complex_list(require(kv, "B"), "B");
    if (bflat.size() != g * g)
        throw std::runtime_error("dataset key 'B': expected " + std::to_string(g * g) +
                                 " entries (row-major g x g)");
    d.B.assign(g, CVec(g));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) d.B[i][j] = bflat[i * g + j];

    const std::pair<const char*, CVec*> vectors[] = {
        {"U", &d.U}, {"V", &d.V}, {"D", &d.D}};
    for (const auto& [name, vec] : vectors) {
        *vec = parse_complex_list(require(kv, name), name);
        if (vec->size() != g)
            throw std::runtime_error(std::string("dataset key '") + name +
                                     "': expected " + std::to_string(g) + " entries");
    }

    {
        const std::string k = trimmed(require(kv, "kappa"));
        char* end = nullptr;
        d.kappa = std::strtod(k.c_str(), &end);
        if (k.empty() || end != k.c_str() + k.size() || !(d.kappa > 0.0))
            throw std::runtime_error("dataset key 'kappa': want one real value > 0");
    }
    const std::pair<const char*, std::array<double, 2>*> lattices[] = {
        {"lattice1", &d.lattice1}, {"lattice2", &d.lattice2}};
    for (const auto& [name, lat] : lattices) {
        const std::vector<cplx> v = parse_complex_list(require(kv, name), name);
        if (v.size() != 1)
            throw std::runtime_error(std::string("dataset key '") + name +
                                     "': want one x,y pair");
        (*lat)[0] = v[0].real();
        (*lat)[1] = v[0].imag();
    }

    try {
        check_riemann_matrix(d.B);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("dataset key 'B': ") + e.what());
    }
    for (std::size_t j = 0; j < g; ++j)
        if (std::abs(d.D[j].real()) > 1e-12 * (1.0 + std::abs(d.D[j])))
            throw std::runtime_error("dataset key 'D': entries must be purely imaginary");
    const double det =
        d.lattice1[0] * d.lattice2[1] - d.lattice1[1] * d.lattice2[0];
    const double lscale = std::max({std::abs(d.lattice1[0]), std::abs(d.lattice1[1]),
                                    std::abs(d.lattice2[0]), std::abs(d.lattice2[1])});
    if (!(std::abs(det) > 1e-12 * lscale * lscale))
        throw std::runtime_error("dataset lattice vectors must be linearly independent");
    return d;
}

SpectralData load_spectral_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    return parse_spectral_data(in);
}

int parameter_count(const SpectralData& data) {
    // g complex spectral positions + g imaginary shifts
    return 3 * data.genus;
}

double dp_solution(const SpectralData& data, double x, double y) {
    const std::size_t g = static_cast<std::size_t>(data.genus);
    const cplx z(x, y), zb(x, -y);
    CVec w(g), w_half(g);
    for (std::size_t j = 0; j < g; ++j) {
        // D is imaginary, so D/(2 pi i) is a real shift
        const cplx base = -(data.U[j] * z + data.V[j] * zb) / (4.0 * kPi) +
                          data.D[j] / cplx(0.0, 2.0 * kPi);
        w[j] = base;
        w_half[j] = base + 0.5;
    }
    const double radius = theta_truncation_radius(data.B, w, 1e-14);
    const cplx num = riemann_theta(w, data.B, radius);
    const cplx den = riemann_theta(w_half, data.B, radius);
    if (std::abs(num) < 1e-10 || std::abs(den) < 1e-10)
        throw std::domain_error(
            "dp_solution: theta factor within 1e-10 of zero (singular solution)");
    const cplx ratio = num / den;
    if (std::abs(std::arg(ratio)) > 1e-8)
        throw std::runtime_error(
            "dp_solution: log ratio is not real to 1e-8; spectral data inconsistent "
            "(reality needs V = conj(U) and imaginary D)");
    return std::log(std::abs(ratio));
}

double periodicity_defect(const SpectralData& data) {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const double s1 = (i + 0.5) / 8.0, s2 = (j + 0.5) / 8.0;
            const double x = s1 * data.lattice1[0] + s2 * data.lattice2[0];
            const double y = s1 * data.lattice1[1] + s2 * data.lattice2[1];
            const double base = dp_solution(data, x, y);
            worst = std::max(
                worst, std::abs(dp_solution(data, x + data.lattice1[0],
                                            y + data.lattice1[1]) -
                                base));
            worst = std::max(
                worst, std::abs(dp_solution(data, x + data.lattice2[0],
                                            y + data.lattice2[1]) -
                                base));
        }
    }
    return worst;
}

TorusGrid sample_torus(const std::function<double(double, double)>& alpha_xy,
                       const std::array<double, 2>& lattice1,
                       const std::array<double, 2>& lattice2, int nx, int ny) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("sample_torus: empty grid");
    TorusGrid grid;
    grid.lattice1 = lattice1;
    grid.lattice2 = lattice2;
    grid.nx = nx;
    grid.ny = ny;
    grid.alpha.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        const double s2 = static_cast<double>(j) / ny;
        for (int i = 0; i < nx; ++i) {
            const double s1 = static_cast<double>(i) / nx;
            const double x = s1 * lattice1[0] + s2 * lattice2[0];
            const double y = s1 * lattice1[1] + s2 * lattice2[1];
            grid.alpha[static_cast<std::size_t>(j) * nx + i] = alpha_xy(x, y);
        }
    }
    return grid;
}

double pde_residual_grid(const TorusGrid& grid, double kappa) {
    if (grid.nx < 16 || grid.ny < 16)
        throw std::invalid_argument("pde_residual_grid: need nx, ny >= 16");
    if (grid.alpha.size() != static_cast<std::size_t>(grid.nx) * grid.ny)
        throw std::invalid_argument("pde_residual_grid: sample count mismatch");

    // lap_x = sum_ab M_ab d^2/ds_a ds_b with M = A^{-1} A^{-T}, A = (L1 | L2)
    const double det = grid.lattice1[0] * grid.lattice2[1] -
                       grid.lattice1[1] * grid.lattice2[0];
    if (det == 0.0)
        throw std::invalid_argument("pde_residual_grid: degenerate lattice");
    const double u0 = grid.lattice2[1] / det, u1 = -grid.lattice2[0] / det;
    const double v0 = -grid.lattice1[1] / det, v1 = grid.lattice1[0] / det;
    const double m11 = u0 * u0 + u1 * u1;
    const double m12 = u0 * v0 + u1 * v1;
    const double m22 = v0 * v0 + v1 * v1;

    const int nx = grid.nx, ny = grid.ny;
    const double h1 = 1.0 / nx, h2 = 1.0 / ny;
    auto at = [&](int i, int j) {
        i = (i % nx + nx) % nx;
        j = (j % ny + ny) % ny;
        return grid.alpha[static_cast<std::size_t>(j) * nx + i];
    };

    const double half_k2 = 0.5 * kappa * kappa;
    double worst = 0.0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double a = at(i, j);
            const double d11 = (at(i + 1, j) - 2.0 * a + at(i - 1, j)) / (h1 * h1);
            const double d22 = (at(i, j + 1) - 2.0 * a + at(i, j - 1)) / (h2 * h2);
            const double d12 = (at(i + 1, j + 1) - at(i + 1, j - 1) -
                                at(i - 1, j + 1) + at(i - 1, j - 1)) /
                               (4.0 * h1 * h2);
            const double lap = m11 * d11 + 2.0 * m12 * d12 + m22 * d22;
            worst = std::max(worst, std::abs(lap + half_k2 * std::sinh(2.0 * a)));
        }
    }
    return worst;
}

double libration_period(double a0, double kappa) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("libration_period: kappa must be > 0");
    if (a0 == 0.0) return 2.0 * kPi / kappa;  // small-oscillation limit
    if (!(a0 > 0.0))
        throw std::invalid_argument("libration_period: amplitude must be >= 0");
    // L = (4/kappa) int_0^{pi/2} a0 cos(psi) / sqrt(sinh(a0+al) sinh(a0-al)),
    // al = a0 sin(psi); a0 - al = 2 a0 sin^2(pi/4 - psi/2) stays accurate at
    // the turning point.
    auto f = [a0](double psi) {
        const double al = a0 * std::sin(psi);
        const double s = std::sin(kPi / 4.0 - psi / 2.0);
        const double gap = 2.0 * a0 * s * s;
        return a0 * std::cos(psi) / std::sqrt(std::sinh(a0 + al) * std::sinh(gap));
    };
    const QuadResult q = integrate_gk(f, 0.0, kPi / 2.0, 1e-14, 1e-13);
    return 4.0 * q.value / kappa;
}

LibrationProfile libration_profile(double a0, double kappa) {
    LibrationProfile p;
    p.kappa = kappa;
    p.a0 = a0;
    p.period = libration_period(a0, kappa);

    const double half_k2 = 0.5 * kappa * kappa;
    auto rhs = [half_k2](double, const std::array<double, 2>& y) -> std::array<double, 2> {
        return {y[1], -half_k2 * std::sinh(2.0 * y[0])};
    };
    OdeOptions<2> opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-14;
    opt.max_step = p.period / 2048.0;  // keeps the Hermite interpolant far below FD scales
    const OdeResult<2> res = integrate_dp54<2>(rhs, 0.0, p.period, {a0, 0.0}, opt);
    if (res.status != OdeStatus::ok)
        throw std::runtime_error("libration_profile: integration failed");
    p.samples.reserve(res.samples.size());
    for (const auto& s : res.samples) p.samples.push_back({s.t, s.y[0], s.y[1]});
    return p;
}

double LibrationProfile::alpha(double t) const {
    if (samples.size() < 2 || !(period > 0.0))
        throw std::logic_error("libration profile not initialized");
    double u = t - period * std::floor(t / period);
    if (u >= samples.back()[0]) u = samples.back()[0];
    auto hi = std::lower_bound(
        samples.begin(), samples.end(), u,
        [](const std::array<double, 3>& s, double v) { return s[0] < v; });
    if (hi == samples.begin()) ++hi;
    if (hi == samples.end()) --hi;
    const auto& b = *hi;
    const auto& a = *(hi - 1);
    const double h = b[0] - a[0];
    const double x = (u - a[0]) / h;
    const double x2 = x * x, x3 = x2 * x;
    return a[1] * (2 * x3 - 3 * x2 + 1) + h * a[2] * (x3 - 2 * x2 + x) +
           b[1] * (-2 * x3 + 3 * x2) + h * b[2] * (x3 - x2);
}

}  // namespace hitchin
