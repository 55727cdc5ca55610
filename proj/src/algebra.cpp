#include "hitchin/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace hitchin {

namespace {

const cplx kI{0.0, 1.0};

// i^n for n >= 0
cplx ipow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// Ek = sigma_k / (2i)
Mat2 e_generator(int k) {
    const cplx h = 1.0 / (2.0 * kI);
    switch (k) {
        case 1: return h * Mat2{0.0, 1.0, 1.0, 0.0};
        case 2: return h * Mat2{0.0, -kI, kI, 0.0};
        case 3: return h * Mat2{1.0, 0.0, 0.0, -1.0};
        default: throw std::logic_error("e_generator: k out of range");
    }
}

Mat2 tau_matrix(RealFormSignature sig, int k) {
    switch (k) {
        case 1: return ipow(sig.n2) * e_generator(1);
        case 2: return ipow(sig.n1) * e_generator(2);
        case 3: return ipow(sig.n1 + sig.n2) * e_generator(3);
        default: throw std::logic_error("tau_matrix: k out of range");
    }
}

}  // namespace

std::array<LieElement, 3> make_generators(RealFormSignature sig) {
    return {LieElement(tau_matrix(sig, 1), sig), LieElement(tau_matrix(sig, 2), sig),
            LieElement(tau_matrix(sig, 3), sig)};
}

LieElement bracket(const LieElement& x, const LieElement& y) {
    if (!(x.signature() == y.signature()))
        throw std::invalid_argument("bracket: mixed signatures");
    return LieElement(commutator(x.matrix(), y.matrix()), x.signature());
}

std::array<cplx, 3> LieElement::coefficients() const {
    if (coeffs_) return *coeffs_;
    // tr(tau_j^2) = -(1/2) g_jj with g_jj = +-1, so c_j = -2 g_jj tr(M tau_j).
    const auto g = killing_metric(sig_);
    std::array<cplx, 3> c;
    for (int j = 0; j < 3; ++j) {
        const Mat2 tj = tau_matrix(sig_, j + 1);
        c[j] = -2.0 * g[j] * trace(m_ * tj);
    }
    coeffs_ = c;
    return c;
}

double LieElement::span_defect() const {
    const auto c = coefficients();
    Mat2 r = m_;
    for (int j = 0; j < 3; ++j) r -= c[j] * tau_matrix(sig_, j + 1);
    double mx = 0.0;
    for (cplx e : {r.a, r.b, r.c, r.d}) mx = std::max(mx, std::abs(e));
    return mx;
}

std::array<double, 3> killing_metric(RealFormSignature sig) {
    std::array<double, 3> g;
    for (int j = 0; j < 3; ++j) {
        const Mat2 tj = tau_matrix(sig, j + 1);
        const cplx t = trace(tj * tj);  // = -(1/2) g_jj
        const double raw = -2.0 * t.real();
        const double snapped = (raw > 0.0) ? 1.0 : -1.0;
        if (std::abs(raw - snapped) > 1e-12 || std::abs(t.imag()) > 1e-12)
            throw std::logic_error("killing_metric: trace form degenerated");
        g[j] = snapped;
    }
    return g;
}

}  // namespace hitchin
