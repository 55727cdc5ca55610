#include "hitchin/radial.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "hitchin/ode.hpp"
#include "hitchin/special.hpp"

namespace hitchin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// F(alpha) with alpha'' + alpha'/r = F(alpha); the sign is (-1)^{n1} of the
// form the reconstruction closes on (see radial_signature).
double forcing(const RadialProblem& p, double alpha) {
    const double s1 = radial_signature(p).s1();
    const double half_k2 = 0.5 * p.kappa * p.kappa;
    return p.kind == RadialKind::sinh_gordon ? s1 * half_k2 * std::sinh(2.0 * alpha)
                                             : s1 * half_k2 * std::sin(2.0 * alpha);
}

double forcing_slope(const RadialProblem& p, double alpha) {
    const double s1 = radial_signature(p).s1();
    const double k2 = p.kappa * p.kappa;
    return p.kind == RadialKind::sinh_gordon ? s1 * k2 * std::cosh(2.0 * alpha)
                                             : s1 * k2 * std::cos(2.0 * alpha);
}

// to (-pi, pi]
double wrap_angle(double t) {
    t = std::remainder(t, 2.0 * kPi);
    if (t <= -kPi) t += 2.0 * kPi;
    return t;
}

}  // namespace

RealFormSignature radial_signature(const RadialProblem& p) {
    if (p.kind == RadialKind::sine_gordon) return RealFormSignature{1, 1};
    return p.sign == RadialSign::top ? RealFormSignature{1, 0} : RealFormSignature{0, 0};
}

SeriesSeed series_seed(const RadialProblem& p) {
    if (!(p.kappa > 0.0)) throw std::invalid_argument("series_seed: kappa must be > 0");
    if (!(p.r0 > 0.0) || !(p.r_max > p.r0))
        throw std::invalid_argument("series_seed: need 0 < r0 < r_max");
    if (!(p.kappa * p.kappa * p.r0 * p.r0 < 0.01))
        throw std::invalid_argument(
            "series_seed: r0 too large, the truncated r^6 term would exceed the "
            "tolerance scale (need kappa^2 r0^2 < 0.01)");
    const double c2 = forcing(p, p.a) / 4.0;
    const double c4 = forcing_slope(p, p.a) * c2 / 16.0;
    const double r2 = p.r0 * p.r0;
    SeriesSeed s;
    s.alpha = p.a + c2 * r2 + c4 * r2 * r2;
    s.dalpha = 2.0 * c2 * p.r0 + 4.0 * c4 * r2 * p.r0;
    return s;
}

RadialSolution integrate_radial(const RadialProblem& p) {
    const SeriesSeed seed = series_seed(p);

    const double s1 = radial_signature(p).s1();
    const double half_k2 = 0.5 * p.kappa * p.kappa;
    const bool is_sinh = p.kind == RadialKind::sinh_gordon;
    auto rhs = [=](double r, const std::array<double, 2>& y) -> std::array<double, 2> {
        const double f =
            s1 * half_k2 * (is_sinh ? std::sinh(2.0 * y[0]) : std::sin(2.0 * y[0]));
        return {y[1], -y[1] / r + f};
    };

    OdeOptions<2> opt;
    opt.rel_tol = p.tol;
    opt.abs_tol = p.tol * 0.01;
    opt.max_step = kPi / (20.0 * p.kappa);  // >= 20 samples per tail period
    opt.blow_up = [](double, const std::array<double, 2>& y) {
        return std::abs(y[0]) > 50.0;
    };

    const OdeResult<2> res =
        integrate_dp54<2>(rhs, p.r0, p.r_max, {seed.alpha, seed.dalpha}, opt);

    RadialSolution sol;
    sol.problem = p;
    sol.samples.reserve(res.samples.size());
    for (const auto& s : res.samples) sol.samples.push_back({s.t, s.y[0], s.y[1]});
    sol.diverged = res.status != OdeStatus::ok;
    sol.blow_up_radius = sol.diverged ? res.stop_t : 0.0;
    return sol;
}

RadialSample sample_at(const RadialSolution& sol, double r) {
    const auto& ss = sol.samples;
    if (ss.size() < 2 || r < ss.front().r || r > ss.back().r)
        throw std::out_of_range("sample_at: r outside the integrated range");
    auto hi = std::lower_bound(ss.begin(), ss.end(), r,
                               [](const RadialSample& s, double v) { return s.r < v; });
    if (hi == ss.begin()) ++hi;
    const RadialSample& b = *hi;
    const RadialSample& a = *(hi - 1);
    const double h = b.r - a.r;
    const double t = (r - a.r) / h;
    const double t2 = t * t, t3 = t2 * t;
    RadialSample out;
    out.r = r;
    out.alpha = a.alpha * (2 * t3 - 3 * t2 + 1) + h * a.dalpha * (t3 - 2 * t2 + t) +
                b.alpha * (-2 * t3 + 3 * t2) + h * b.dalpha * (t3 - t2);
    out.dalpha = (a.alpha * (6 * t2 - 6 * t) + h * a.dalpha * (3 * t2 - 4 * t + 1) +
                  b.alpha * (-6 * t2 + 6 * t) + h * b.dalpha * (3 * t2 - 2 * t)) /
                 h;
    return out;
}

double painleve_residual(const RadialProblem& p, double r, double alpha, double dalpha) {
    const double s1 = radial_signature(p).s1();
    const double quarter_k2 = 0.25 * p.kappa * p.kappa;
    const double addot = -dalpha / r + forcing(p, alpha);
    if (p.kind == RadialKind::sinh_gordon) {
        const double u = std::exp(alpha);
        const double up = dalpha * u;
        const double upp = (addot + dalpha * dalpha) * u;
        const double lhs = upp - up * up / u + up / r;
        return std::abs(lhs - s1 * quarter_k2 * (u * u * u - 1.0 / u));
    }
    const cplx v = std::polar(1.0, alpha);
    const cplx vp = cplx(0.0, dalpha) * v;
    const cplx vpp = cplx(-dalpha * dalpha, addot) * v;
    const cplx lhs = vpp - vp * vp / v + vp / r;
    return std::abs(lhs - s1 * quarter_k2 * (v * v * v - 1.0 / v));
}

double max_painleve_residual(const RadialSolution& sol) {
    double worst = 0.0;
    for (const auto& s : sol.samples)
        worst = std::max(worst,
                         painleve_residual(sol.problem, s.r, s.alpha, s.dalpha));
    return worst;
}

AsymptoticFit exact_asymptotics(double a, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("exact_asymptotics: kappa must be > 0");
    AsymptoticFit fit;
    if (a == 0.0) return fit;  // trivial solution: c = 0, no phase
    const double c2 = (4.0 / kPi) * std::log(std::cosh(a));
    fit.c = std::sqrt(c2);
    fit.theta0 = wrap_angle(-(c2 / 2.0) * std::log(2.0) - kPi / 4.0 +
                            arg_gamma_imag_axis(c2 / 4.0) +
                            (a > 0.0 ? kPi / 2.0 : -kPi / 2.0));
    return fit;
}

namespace {

struct TailPoint {
    double z;      // kappa * r
    double alpha;
};

double tail_sse(const std::vector<TailPoint>& pts, double c, double th) {
    double sse = 0.0;
    for (const auto& q : pts) {
        const double psi = q.z + 0.25 * c * c * std::log(q.z) - th;
        const double e = c * std::sin(psi) / std::sqrt(q.z) - q.alpha;
        sse += e * e;
    }
    return sse;
}

}  // namespace

AsymptoticFit fit_tail(const RadialSolution& sol) {
    const RadialProblem& p = sol.problem;
    if (sol.diverged)
        throw std::invalid_argument("fit_tail: solution diverged, no tail to fit");
    if (!(p.kappa * p.r_max >= 50.0))
        throw std::invalid_argument(
            "fit_tail: window too short (need kappa * r_max >= 50)");

    const double r_lo = 0.5 * p.r_max;
    std::vector<TailPoint> pts;
    pts.reserve(sol.samples.size() / 2 + 1);
    for (const auto& s : sol.samples)
        if (s.r >= r_lo) pts.push_back({p.kappa * s.r, s.alpha});
    if (pts.size() < 8)
        throw std::invalid_argument("fit_tail: too few samples in the window");

    AsymptoticFit fit;
    fit.r_lo = r_lo;
    fit.r_hi = p.r_max;

    // Initial guess: closed form when available, otherwise envelope amplitude
    // and the first zero crossing of the window.
    double c, th;
    if (p.kind == RadialKind::sinh_gordon && p.sign == RadialSign::top && p.a != 0.0) {
        const AsymptoticFit guess = exact_asymptotics(p.a, p.kappa);
        c = guess.c;
        th = guess.theta0;
    } else {
        c = 0.0;
        for (const auto& q : pts) c = std::max(c, std::abs(q.alpha) * std::sqrt(q.z));
        if (c == 0.0) return fit;  // identically zero tail: the trivial fit
        th = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i].alpha * pts[i + 1].alpha < 0.0) {
                const double f = pts[i].alpha / (pts[i].alpha - pts[i + 1].alpha);
                const double zc = pts[i].z + f * (pts[i + 1].z - pts[i].z);
                const double phi = zc + 0.25 * c * c * std::log(zc);
                // upward crossing: psi = 0 (mod 2 pi); downward: psi = pi
                th = wrap_angle(pts[i + 1].alpha > pts[i].alpha ? phi : phi - kPi);
                break;
            }
        }
    }

    // Levenberg-Marquardt on (c, theta0) with the analytic Jacobian.
    double sse = tail_sse(pts, c, th);
    double lm = 1e-3;
    for (int iter = 0; iter < 200; ++iter) {
        double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, jte0 = 0.0, jte1 = 0.0;
        for (const auto& q : pts) {
            const double lg = std::log(q.z);
            const double sq = std::sqrt(q.z);
            const double psi = q.z + 0.25 * c * c * lg - th;
            const double s = std::sin(psi), co = std::cos(psi);
            const double e = c * s / sq - q.alpha;
            const double jc = (s + 0.5 * c * c * lg * co) / sq;
            const double jt = -c * co / sq;
            jtj00 += jc * jc;
            jtj01 += jc * jt;
            jtj11 += jt * jt;
            jte0 += jc * e;
            jte1 += jt * e;
        }
        bool stepped = false;
        for (int damp = 0; damp < 12; ++damp) {
            const double m00 = jtj00 * (1.0 + lm);
            const double m11 = jtj11 * (1.0 + lm);
            const double det = m00 * m11 - jtj01 * jtj01;
            if (det == 0.0) break;
            const double dc = (-jte0 * m11 + jte1 * jtj01) / det;
            const double dt = (-jte1 * m00 + jte0 * jtj01) / det;
            const double sse_try = tail_sse(pts, c + dc, th + dt);
            if (sse_try < sse) {
                c += dc;
                th += dt;
                const bool converged =
                    std::abs(dc) + std::abs(dt) < 1e-13 * (1.0 + std::abs(c)) ||
                    sse - sse_try < 1e-16 * sse;
                sse = sse_try;
                lm = std::max(lm * 0.3, 1e-12);
                stepped = true;
                if (converged) iter = 200;
                break;
            }
            lm *= 4.0;
        }
        if (!stepped) break;
    }

    if (c < 0.0) {  // (-c, th) and (c, th - pi) are the same model
        c = -c;
        th -= kPi;
    }
    fit.c = c;
    fit.theta0 = wrap_angle(th);
    fit.fit_residual = std::sqrt(sse / static_cast<double>(pts.size()));
    return fit;
}

RadialObservables observables_at(const RadialProblem& p, double r, double alpha,
                                 double dalpha) {
    const double s1 = radial_signature(p).s1();
    const double k2 = p.kappa * p.kappa;
    // q(alpha) = (g/kappa)^2 = cosh^2 or cos^2; S/C drive the forcing.
    double S, C, qp, qpp;
    if (p.kind == RadialKind::sinh_gordon) {
        S = std::sinh(2.0 * alpha);
        C = std::cosh(2.0 * alpha);
        qp = S;
        qpp = 2.0 * C;
    } else {
        S = std::sin(2.0 * alpha);
        C = std::cos(2.0 * alpha);
        qp = -S;
        qpp = -2.0 * C;
    }
    const double F = s1 * 0.5 * k2 * S;  // alpha'' + alpha'/r on solutions
    RadialObservables o;
    // sigma = (-1)^{n1}/(16 pi^2) lap(g^2), lap(g^2) = k2 (q' F + q'' alpha'^2)
    o.sigma = s1 * k2 * (qp * F + qpp * dalpha * dalpha) / (16.0 * kPi * kPi);
    // boundary form of 2 pi int sigma r dr: (-1)^{n1}/(8 pi) r d(g^2)/dr
    o.cumulative_action = s1 * k2 * r * qp * dalpha / (8.0 * kPi);
    o.f12 = s1 * 0.5 * k2 * S;
    o.j_theta = -s1 * k2 * C * dalpha;
    return o;
}

double oscillation_frequency(const std::vector<std::array<double, 2>>& samples) {
    std::vector<double> z;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const double w0 = samples[i][1], w1 = samples[i + 1][1];
        if (w0 == 0.0) {
            z.push_back(samples[i][0]);
        } else if (w0 * w1 < 0.0) {
            const double f = w0 / (w0 - w1);
            z.push_back(samples[i][0] + f * (samples[i + 1][0] - samples[i][0]));
        }
    }
    if (z.size() < 4)
        throw std::invalid_argument(
            "oscillation_frequency: fewer than four zero crossings");
    // least squares z_k ~ b + s k; consecutive crossings are half a period apart
    const double n = static_cast<double>(z.size());
    double sk = 0.0, sz = 0.0, skk = 0.0, skz = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double kk = static_cast<double>(k);
        sk += kk;
        sz += z[k];
        skk += kk * kk;
        skz += kk * z[k];
    }
    const double slope = (n * skz - sk * sz) / (n * skk - sk * sk);
    return kPi / slope;
}

AnsatzField radial_ansatz(const RadialSolution& sol) {
    auto s = std::make_shared<const RadialSolution>(sol);
    const bool is_sinh = sol.problem.kind == RadialKind::sinh_gordon;
    const double kappa = sol.problem.kappa;
    auto alpha_r = [s](double x, double y) { return sample_at(*s, std::hypot(x, y)); };
    auto g = [alpha_r, is_sinh, kappa](double x, double y) {
        const double al = alpha_r(x, y).alpha;
        return kappa * (is_sinh ? std::cosh(al) : std::cos(al));
    };
    auto h = [alpha_r, is_sinh, kappa](double x, double y) {
        const double al = alpha_r(x, y).alpha;
        return kappa * (is_sinh ? std::sinh(al) : std::sin(al));
    };
    // f1 = -dy alpha, f2 = dx alpha for a radial alpha
    auto f1 = [alpha_r](double x, double y) {
        const RadialSample sm = alpha_r(x, y);
        return -sm.dalpha * y / sm.r;
    };
    auto f2 = [alpha_r](double x, double y) {
        const RadialSample sm = alpha_r(x, y);
        return sm.dalpha * x / sm.r;
    };
    return AnsatzField{radial_signature(sol.problem), ScalarField(f1), ScalarField(f2),
                       ScalarField(g), ScalarField(h)};
}

}  // namespace hitchin
