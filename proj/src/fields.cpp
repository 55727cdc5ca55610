#include "hitchin/fields.hpp"

#include <cmath>
#include <numbers>

namespace hitchin {

namespace {

// Derivative helpers. Grid fields use their native spacing (the evaluation
// point must be an interior node); callable fields use central differences.

struct Deriv {
    double dx, dy;
};

double eval(const ScalarField& f, double x, double y) { return f(x, y); }

Deriv d1(const ScalarField& f, double x, double y, double h) {
    if (f.is_grid()) {
        const auto& g = f.grid();
        const double hx = g.dx, hy = g.dy;
        return {(f(x + hx, y) - f(x - hx, y)) / (2 * hx),
                (f(x, y + hy) - f(x, y - hy)) / (2 * hy)};
    }
    return {(f(x + h, y) - f(x - h, y)) / (2 * h), (f(x, y + h) - f(x, y - h)) / (2 * h)};
}

double lap(const ScalarField& f, double x, double y, double h) {
    double hx = h, hy = h;
    if (f.is_grid()) {
        hx = f.grid().dx;
        hy = f.grid().dy;
    }
    const double c = f(x, y);
    return (f(x + hx, y) - 2 * c + f(x - hx, y)) / (hx * hx) +
           (f(x, y + hy) - 2 * c + f(x, y - hy)) / (hy * hy);
}

}  // namespace

ScalarField::ScalarField(Grid g) : grid_(std::move(g)) {
    if (grid_->nx < 3 || grid_->ny < 3 || grid_->dx <= 0 || grid_->dy <= 0 ||
        static_cast<int>(grid_->values.size()) != grid_->nx * grid_->ny)
        throw std::invalid_argument("ScalarField: malformed grid");
}

double ScalarField::operator()(double x, double y) const {
    if (!grid_) {
        if (!fn_) throw std::logic_error("ScalarField: empty");
        return fn_(x, y);
    }
    const auto& g = *grid_;
    const double fi = (x - g.x0) / g.dx, fj = (y - g.y0) / g.dy;
    const int i = static_cast<int>(std::lround(fi)), j = static_cast<int>(std::lround(fj));
    if (std::abs(fi - i) > 1e-6 || std::abs(fj - j) > 1e-6)
        throw std::domain_error("ScalarField: grid field evaluated off-node");
    if (i < 0 || i >= g.nx || j < 0 || j >= g.ny)
        throw std::domain_error("ScalarField: node outside grid");
    return g.values[static_cast<std::size_t>(j) * g.nx + i];
}

double HitchinResidual::max_abs() const {
    double m = 0.0;
    for (double v : r) m = std::max(m, std::abs(v));
    return m;
}

CurvatureComponents curvature(const AnsatzField& field, double x, double y,
                              const FdOptions& fd) {
    const auto tau = make_generators(field.sig);
    const double s2 = field.sig.s2();

    const double f1 = eval(field.f1, x, y), f2 = eval(field.f2, x, y);
    const double g = eval(field.g, x, y), h = eval(field.h, x, y);
    const Deriv df1 = d1(field.f1, x, y, fd.step_first);
    const Deriv df2 = d1(field.f2, x, y, fd.step_first);
    const Deriv dg = d1(field.g, x, y, fd.step_first);
    const Deriv dh = d1(field.h, x, y, fd.step_first);

    auto el = [&](int k, double c) { return c * tau[static_cast<std::size_t>(k - 1)]; };

    CurvatureComponents F{
        // F12 = (dx f2 - dy f1) tau1
        el(1, df2.dx - df1.dy),
        // F13 = dx g tau2 + f1 g tau3
        el(2, dg.dx) + el(3, f1 * g),
        // F14 = dx h tau3 - (-1)^{n2} f1 h tau2
        el(3, dh.dx) + el(2, -s2 * f1 * h),
        // F23 = dy g tau2 + f2 g tau3
        el(2, dg.dy) + el(3, f2 * g),
        // F24 = dy h tau3 - (-1)^{n2} f2 h tau2
        el(3, dh.dy) + el(2, -s2 * f2 * h),
        // F34 = (-1)^{n1} g h tau1
        el(1, field.sig.s1() * g * h)};
    return F;
}

HitchinResidual hitchin_residual(const AnsatzField& field, double x, double y,
                                 const FdOptions& fd) {
    const double s1 = field.sig.s1(), s2 = field.sig.s2();
    const double f1 = eval(field.f1, x, y), f2 = eval(field.f2, x, y);
    const double g = eval(field.g, x, y), h = eval(field.h, x, y);
    const Deriv df1 = d1(field.f1, x, y, fd.step_first);
    const Deriv df2 = d1(field.f2, x, y, fd.step_first);
    const Deriv dg = d1(field.g, x, y, fd.step_first);
    const Deriv dh = d1(field.h, x, y, fd.step_first);

    HitchinResidual res;
    res.r[0] = dg.dx - s2 * f2 * h;
    res.r[1] = dg.dy + s2 * f1 * h;
    res.r[2] = dh.dx - f2 * g;
    res.r[3] = dh.dy + f1 * g;
    res.r[4] = df2.dx - df1.dy - s1 * g * h;
    return res;
}

double kappa_squared(const AnsatzField& field, double x, double y) {
    const double g = eval(field.g, x, y), h = eval(field.h, x, y);
    return g * g - field.sig.s2() * h * h;
}

double field_equation_residual_g(const ScalarField& gf, double kappa,
                                 RealFormSignature sig, double x, double y,
                                 const FdOptions& fd) {
    const double g = gf(x, y);
    const double k2 = kappa * kappa;
    const double denom = g * g - k2;
    if (std::abs(denom) < 1e-10 * std::max(1.0, k2))
        throw std::domain_error("field_equation_residual_g: |g^2 - kappa^2| within singular layer");
    const Deriv dg = d1(gf, x, y, fd.step_first);
    const double lg = lap(gf, x, y, fd.step_second);
    const double grad2 = dg.dx * dg.dx + dg.dy * dg.dy;
    return lg - g * grad2 / denom - sig.s1() * g * denom;
}

double action_density(const ScalarField& gf, RealFormSignature sig, double x, double y,
                      const FdOptions& fd) {
    // sigma = (-1)^{n1}/(16 pi^2) lap(g^2)
    double l;
    if (gf.is_grid()) {
        auto grid = gf.grid();
        for (double& v : grid.values) v *= v;
        l = lap(ScalarField(std::move(grid)), x, y, fd.step_second);
    } else {
        l = lap(ScalarField([&gf](double u, double v) {
                    const double g = gf(u, v);
                    return g * g;
                }),
                x, y, fd.step_second);
    }
    return sig.s1() / (16.0 * std::numbers::pi * std::numbers::pi) * l;
}

double action_density_raw(const AnsatzField& field, double x, double y) {
    const double s1 = field.sig.s1(), s2 = field.sig.s2();
    const double f1 = eval(field.f1, x, y), f2 = eval(field.f2, x, y);
    const double g = eval(field.g, x, y), h = eval(field.h, x, y);
    const double gh = g * h;
    const double val = s2 * gh * gh + s1 * s2 * (f1 * f1 + f2 * f2) * (g * g + s2 * h * h);
    return val / (8.0 * std::numbers::pi * std::numbers::pi);
}

double action_density_g(const ScalarField& gf, double kappa, RealFormSignature sig,
                        double x, double y, const FdOptions& fd) {
    const double g = gf(x, y);
    const double k2 = kappa * kappa;
    const double denom = g * g - k2;
    if (std::abs(denom) < 1e-10 * std::max(1.0, k2))
        throw std::domain_error("action_density_g: |g^2 - kappa^2| within singular layer");
    const Deriv dg = d1(gf, x, y, fd.step_first);
    const double grad2 = dg.dx * dg.dx + dg.dy * dg.dy;
    const double val = g * g * denom + sig.s1() * grad2 * (2.0 * g * g - k2) / denom;
    return val / (8.0 * std::numbers::pi * std::numbers::pi);
}

ReducedAction reduced_action_radial(const std::vector<std::array<double, 2>>& samples,
                                    RealFormSignature sig) {
    if (samples.size() < 8)
        throw std::invalid_argument("reduced_action_radial: need at least 8 samples");
    const double pref = sig.s1() / (8.0 * std::numbers::pi);

    // bracket b_i = pref * r * d(g^2)/dr at interior nodes, three-point stencil
    // on the (possibly nonuniform) radii
    const std::size_t n = samples.size();
    std::vector<double> br(n);
    std::vector<double> rr(n);
    for (std::size_t i = 0; i < n; ++i) rr[i] = samples[i][0];
    auto g2 = [&](std::size_t i) { return samples[i][1] * samples[i][1]; };
    // derivative of the quadratic through (rr[a..c], g2) at t, for the endpoints
    auto lagrange3 = [&](std::size_t a, std::size_t b, std::size_t c, double t) {
        return g2(a) * (2 * t - rr[b] - rr[c]) / ((rr[a] - rr[b]) * (rr[a] - rr[c])) +
               g2(b) * (2 * t - rr[a] - rr[c]) / ((rr[b] - rr[a]) * (rr[b] - rr[c])) +
               g2(c) * (2 * t - rr[a] - rr[b]) / ((rr[c] - rr[a]) * (rr[c] - rr[b]));
    };
    for (std::size_t i = 0; i < n; ++i) {
        double d;
        if (i == 0) {
            d = lagrange3(0, 1, 2, rr[0]);
        } else if (i == n - 1) {
            d = lagrange3(n - 3, n - 2, n - 1, rr[n - 1]);
        } else {
            const double hl = rr[i] - rr[i - 1], hr = rr[i + 1] - rr[i];
            d = (hl * hl * g2(i + 1) - hr * hr * g2(i - 1) + (hr * hr - hl * hl) * g2(i)) /
                (hl * hr * (hl + hr));
        }
        br[i] = pref * rr[i] * d;
    }

    ReducedAction out;
    out.bracket_lo = br.front();
    out.bracket_hi = br.back();
    out.value = out.bracket_hi - out.bracket_lo;

    // tail analysis over the upper half of the samples
    const std::size_t tail0 = n / 2;
    double lo = br[tail0], hi = br[tail0], mean = 0.0;
    for (std::size_t i = tail0; i < n; ++i) {
        lo = std::min(lo, br[i]);
        hi = std::max(hi, br[i]);
        mean += br[i];
        if (!std::isfinite(br[i])) out.divergent = true;
    }
    mean /= static_cast<double>(n - tail0);
    int sign_changes = 0;
    for (std::size_t i = tail0 + 1; i < n; ++i) {
        const double a = br[i - 1] - mean, b = br[i] - mean;
        if (a * b < 0) ++sign_changes;
    }
    const double amp = 0.5 * (hi - lo);
    const double scale = std::max(std::abs(mean), 1e-12);
    if (sign_changes >= 3 && amp > 1e-3 * scale) {
        out.oscillatory = true;
        out.tail_amplitude = amp;
    }
    // monotone growth across the tail marks divergence
    const std::size_t third = (n - tail0) / 3;
    if (third >= 2) {
        auto absmax = [&](std::size_t a, std::size_t b) {
            double m = 0.0;
            for (std::size_t i = a; i < b; ++i) m = std::max(m, std::abs(br[i]));
            return m;
        };
        const double m1 = absmax(tail0, tail0 + third);
        const double m3 = absmax(n - third, n);
        if (m3 > 100.0 * (m1 + 1e-12) && m3 > 1.0) out.divergent = true;
    }
    return out;
}

double flat_connection_residual(const AnsatzField& field, double x, double y,
                                const FdOptions& fd) {
    const auto tau = make_generators(field.sig);
    const Mat2 t1 = tau[0].matrix(), t2 = tau[1].matrix(), t3 = tau[2].matrix();
    const cplx i{0.0, 1.0};

    auto bx = [&](double u, double v) -> Mat2 {
        return eval(field.f1, u, v) * t1 - i * eval(field.h, u, v) * t3;
    };
    auto by = [&](double u, double v) -> Mat2 {
        return eval(field.f2, u, v) * t1 + i * eval(field.g, u, v) * t2;
    };

    const double h = fd.step_first;
    const Mat2 dxBy = (1.0 / (2 * h)) * (by(x + h, y) - by(x - h, y));
    const Mat2 dyBx = (1.0 / (2 * h)) * (bx(x, y + h) - bx(x, y - h));
    const Mat2 F = dxBy - dyBx + commutator(bx(x, y), by(x, y));
    return frobenius_norm(F);
}

FourPotential gauge_transform_exp(const FourPotential& a, const Mat2& generator,
                                  std::function<double(double, double)> chi,
                                  std::function<std::array<double, 2>(double, double)> dchi) {
    FourPotential out;
    out.sig = a.sig;
    for (int mu = 0; mu < 4; ++mu) {
        out.comp[static_cast<std::size_t>(mu)] = [mu, a, generator, chi, dchi](double x,
                                                                               double y) {
            const Mat2 q = expm_traceless(chi(x, y) * generator);
            const Mat2 qi = inverse(q);
            Mat2 r = qi * a.comp[static_cast<std::size_t>(mu)](x, y) * q;
            if (mu < 2) {
                const auto dc = dchi(x, y);
                // q^{-1} dq = dchi * generator (generator commutes with q)
                r += dc[static_cast<std::size_t>(mu)] * generator;
            }
            return r;
        };
    }
    return out;
}

}  // namespace hitchin
