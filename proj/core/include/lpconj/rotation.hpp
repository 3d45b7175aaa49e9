#pragma once

// Phase warps: the scalar homeomorphism
//
//     f_w(z) = z * exp(i * theta * ln|z| / ln|w|),   f_w(0) = 0,
//
// with w = |w| e^{i theta}, |w| != 1, which satisfies f_w(|w| z) = w f_w(z),
// and its coordinatewise lift F_W intertwining D_|W| with D_W on l^p.
// f_0 is the identity. F_W preserves every coordinate modulus, hence the norm.

#include "lpconj/lp_core.hpp"

namespace lpconj {

class PhaseWarp {
public:
    /// Throws HypothesisError when |w| == 1 (and w != 0).
    explicit PhaseWarp(Complex w);

    Complex weight() const noexcept { return w_; }
    /// Principal argument of w, in (-pi, pi].
    double theta() const noexcept { return theta_; }
    /// ln|w|; 0 for w == 0, where it is not used.
    double log_modulus() const noexcept { return log_mod_; }
    bool is_identity() const noexcept { return w_ == Complex{} || theta_ == 0.0; }

    Complex operator()(Complex z) const { return rotate(z, 1.0); }
    Complex inverse(Complex z) const { return rotate(z, -1.0); }

private:
    Complex rotate(Complex z, double sign) const;

    Complex w_;
    double theta_ = 0.0;
    double log_mod_ = 0.0;
};

Complex phase_warp(const PhaseWarp& pw, Complex z);
Complex phase_warp_inverse(const PhaseWarp& pw, Complex z);

/// pi_n(F_W x) = f_{w_n}(x_n). Throws HypothesisError if some |w_n| == 1.
FinSeq rotation_forward(const WeightSeq& w, const FinSeq& x);
FinSeq rotation_inverse(const WeightSeq& w, const FinSeq& x);

} // namespace lpconj
