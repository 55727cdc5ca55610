#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace hitchin {

/// Result status of an adaptive integration run.
enum class OdeStatus {
    ok,
    blow_up,         // a state component exceeded the caller's bound
    step_underflow,  // step shrank below min_step_rel * |t|
};

template <std::size_t N>
struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.0;             // 0 = unlimited
    double initial_step = 0.0;         // 0 = auto
    double min_step_rel = 1e-14;       // underflow when h < min_step_rel * |t|
    // Optional blow-up predicate; return true to stop with OdeStatus::blow_up.
    std::function<bool(double t, const std::array<double, N>&)> blow_up;
};

template <std::size_t N>
struct OdeSample {
    double t;
    std::array<double, N> y;
};

template <std::size_t N>
struct OdeResult {
    OdeStatus status = OdeStatus::ok;
    double stop_t = 0.0;  // where integration stopped (== t_end when ok)
    std::vector<OdeSample<N>> samples;
};

/// Dormand-Prince 5(4) embedded pair with PI step-size control.
/// Accepted steps are appended to the sample list (including the initial
/// state). Deterministic: no heuristics depend on anything but the inputs.
template <std::size_t N, typename F>
OdeResult<N> integrate_dp54(F&& f, double t0, double t1, std::array<double, N> y0,
                            const OdeOptions<N>& opt = {}) {
    using State = std::array<double, N>;

    // Butcher tableau (Dormand & Prince 1980).
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // 4th-order weights (embedded)
    static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                            e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

    OdeResult<N> out;
    out.samples.push_back({t0, y0});

    double t = t0;
    State y = y0;
    State k1 = f(t, y);

    const double span = t1 - t0;
    double h = opt.initial_step > 0 ? opt.initial_step : span / 100.0;
    if (opt.max_step > 0) h = std::min(h, opt.max_step);

    // PI controller state
    double err_prev = 1.0;
    const double safety = 0.9, k_p = 0.7 / 5.0, k_i = 0.4 / 5.0;

    auto scaled_err = [&](const State& e, const State& ya, const State& yb) {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            const double q = e[i] / sc;
            s += q * q;
        }
        return std::sqrt(s / N);
    };

    while (t < t1) {
        if (t + h > t1) h = t1 - t;

        State y2, y3, y4, y5, y6, y7;
        for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + h * a21 * k1[i];
        State k2 = f(t + c2 * h, y2);
        for (std::size_t i = 0; i < N; ++i) y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        State k3 = f(t + c3 * h, y3);
        for (std::size_t i = 0; i < N; ++i)
            y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        State k4 = f(t + c4 * h, y4);
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        State k5 = f(t + c5 * h, y5);
        for (std::size_t i = 0; i < N; ++i)
            y6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                a65 * k5[i]);
        State k6 = f(t + h, y6);
        for (std::size_t i = 0; i < N; ++i)
            y7[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        State k7 = f(t + h, y7);  // FSAL

        State err;
        for (std::size_t i = 0; i < N; ++i) {
            const double y4th = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                            e6 * k6[i] + e7 * k7[i]);
            err[i] = y7[i] - y4th;
        }
        const double en = scaled_err(err, y, y7);

        if (en <= 1.0) {
            t += h;
            y = y7;
            k1 = k7;
            out.samples.push_back({t, y});
            if (opt.blow_up && opt.blow_up(t, y)) {
                out.status = OdeStatus::blow_up;
                out.stop_t = t;
                return out;
            }
            const double fac = safety * std::pow(en > 0 ? en : 1e-10, -k_p) *
                               std::pow(err_prev, k_i);
            h *= std::min(5.0, std::max(0.2, fac));
            err_prev = std::max(en, 1e-10);
        } else {
            h *= std::max(0.2, safety * std::pow(en, -0.2));
        }
        if (opt.max_step > 0) h = std::min(h, opt.max_step);
        if (h < opt.min_step_rel * std::abs(t)) {
            out.status = OdeStatus::step_underflow;
            out.stop_t = t;
            return out;
        }
    }
    out.status = OdeStatus::ok;
    out.stop_t = t;
    return out;
}

}  // namespace hitchin
