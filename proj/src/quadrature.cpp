#include "hitchin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace hitchin {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] and the embedded 7-point Gauss
// weights. Values from the QUADPACK QK15 rule.
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b, int& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    evals += 15;
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * xgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += wgk[j] * fsum;
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
    }
    const double value = resk * h;
    const double err = std::abs((resk - resg) * h);
    return {a, b, value, err};
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_intervals) {
    QuadResult out;
    if (a == b) return out;
    int evals = 0;
    std::priority_queue<Panel> q;
    q.push(eval_panel(f, a, b, evals));
    double total = q.top().value, toterr = q.top().err;
    int n = 1;
    while (toterr > std::max(abs_tol, rel_tol * std::abs(total)) && n < max_intervals) {
        Panel worst = q.top();
        q.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel l = eval_panel(f, worst.a, mid, evals);
        Panel r = eval_panel(f, mid, worst.b, evals);
        total += l.value + r.value - worst.value;
        toterr += l.err + r.err - worst.err;
        q.push(l);
        q.push(r);
        ++n;
    }
    out.value = total;
    out.error_estimate = toterr;
    out.evaluations = evals;
    out.converged = toterr <= std::max(abs_tol, rel_tol * std::abs(total));
    return out;
}

QuadResult integrate_plane(const std::function<double(double, double)>& f, double abs_tol,
                           double rel_tol) {
    const double half_pi = std::acos(0.0);
    QuadResult out;
    int evals = 0;
    bool ok = true;
    auto outer = [&](double u) {
        const double x = std::tan(u);
        const double jx = 1.0 + x * x;  // dx/du
        QuadResult inner = integrate_gk(
            [&](double v) {
                const double y = std::tan(v);
                const double jy = 1.0 + y * y;
                return f(x, y) * jy;
            },
            -half_pi, half_pi, abs_tol, rel_tol);
        evals += inner.evaluations;
        ok = ok && inner.converged;
        return inner.value * jx;
    };
    QuadResult r = integrate_gk(outer, -half_pi, half_pi, abs_tol, rel_tol);
    out.value = r.value;
    out.error_estimate = r.error_estimate;
    out.evaluations = evals + r.evaluations;
    out.converged = ok && r.converged;
    return out;
}

}  // namespace hitchin
