#pragma once

#include <array>
#include <optional>

#include "hitchin/mat2.hpp"

namespace hitchin {

/// Selects a real form of sl(2,C) by the pair of sign exponents (n1, n2),
/// each 0 or 1. The generators are
///     tau1 = i^{n2} E1,   tau2 = i^{n1} E2,   tau3 = i^{n1+n2} E3,
/// with Ek = sigma_k / (2i) (sigma_k the Pauli matrices), so that
///     [tau2,tau3] = (-1)^{n1} tau1,
///     [tau3,tau1] = (-1)^{n2} tau2,
///     [tau1,tau2] = tau3.
/// (0,0) is su(2); the other three choices give so(2,1) embeddings that differ
/// by which generator is the compact one.
struct RealFormSignature {
    int n1 = 0;
    int n2 = 0;

    bool operator==(const RealFormSignature&) const = default;

    /// (-1)^{n1}
    double s1() const { return n1 ? -1.0 : 1.0; }
    /// (-1)^{n2}
    double s2() const { return n2 ? -1.0 : 1.0; }
};

inline constexpr RealFormSignature kSu2{0, 0};
inline constexpr RealFormSignature kSo21{1, 0};  // noncompact form used by the sinh branch

/// Element of the (complexified) algebra in the 2x2 defining representation.
/// The matrix is authoritative; coefficients in the tau-basis of `sig` are
/// computed on demand and cached.
class LieElement {
  public:
    LieElement() = default;
    LieElement(const Mat2& m, RealFormSignature sig) : m_(m), sig_(sig) {}

    const Mat2& matrix() const { return m_; }
    RealFormSignature signature() const { return sig_; }

    /// Coefficients (c1,c2,c3) with matrix() == c1 tau1 + c2 tau2 + c3 tau3.
    /// Exact for traceless input; the decomposition uses the trace form.
    std::array<cplx, 3> coefficients() const;

    /// Max |entry| of matrix() - sum ck tauk; nonzero means the element left
    /// the span (it never does under +, scalar multiple, or bracket).
    double span_defect() const;

    LieElement& operator+=(const LieElement& o) { m_ += o.m_; drop_cache(); return *this; }
    friend LieElement operator+(LieElement x, const LieElement& y) { return x += y; }
    friend LieElement operator*(cplx s, const LieElement& x) {
        return LieElement(s * x.m_, x.sig_);
    }
    friend LieElement operator*(double s, const LieElement& x) { return cplx(s) * x; }

  private:
    void drop_cache() { coeffs_.reset(); }

    Mat2 m_{};
    RealFormSignature sig_{};
    mutable std::optional<std::array<cplx, 3>> coeffs_;
};

/// The three generators tau1, tau2, tau3 for the given signature.
std::array<LieElement, 3> make_generators(RealFormSignature sig);

/// Matrix commutator; both arguments must carry the same signature.
LieElement bracket(const LieElement& x, const LieElement& y);

/// Diagonal of the metric g_ij defined by tr(tau_i tau_j) = -(1/2) g_ij,
/// computed from the generators (not tabulated). Values are +-1:
///   (0,0) -> (+1,+1,+1)   (1,0) -> (+1,-1,-1)
///   (0,1) -> (-1,+1,-1)   (1,1) -> (-1,-1,+1)
std::array<double, 3> killing_metric(RealFormSignature sig);

}  // namespace hitchin
