// Numeric evaluation of the modular parametrization psi: tau -> (x, y) on
// E^3 : y^2 = x^3 + 144, with y = -8 f(9 tau) - 12 and x the analytic
// continuation of the principal cube root of y^2 - 144 = 64 f9 (f9 + 3).
#pragma once

#include <stdexcept>

#include "sylv/eta.hpp"

namespace sylv {

struct ParamPoint {
    BigComplex x, y;
};

namespace detail {

inline BigComplex f9_at(const BigComplex& tau, mpfr_prec_t prec) {
    BigComplex t9 = tau * BigFloat(9L, prec);
    BigComplex t27 = tau * BigFloat(27L, prec);
    return pow_ui(eval_eta(t9, prec), 4) / pow_ui(eval_eta(t27, prec), 4);
}

// The three cube roots of c; returns the one nearest to prev and the margin
// ratio d_nearest / d_second (small is safe).
inline BigComplex nearest_cube_root(const BigComplex& c, const BigComplex& prev, double* margin) {
    mpfr_prec_t prec = std::max(c.prec(), prev.prec());
    BigComplex r = cbrt_principal(c);
    BigComplex w = omega_numeric(prec);
    BigComplex cands[3] = {r, r * w, r * w * w};
    double d[3];
    for (int i = 0; i < 3; ++i) d[i] = abs(cands[i] - prev).to_double();
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (d[i] < d[best]) best = i;
    double second = 1e300;
    for (int i = 0; i < 3; ++i)
        if (i != best && d[i] < second) second = d[i];
    *margin = (second > 0) ? d[best] / second : 1.0;
    return cands[best];
}

} // namespace detail

// Evaluate psi(tau). The cube-root branch of x is fixed at a large imaginary
// part, where x ~ 4 q^{-2} is the dominant term of its q-expansion, and then
// tracked continuously down a vertical path to the target (the
// parametrization is single-valued on the upper half plane, so continuation
// along the path reproduces it; the step is halved whenever the nearest-root
// decision loses margin).
inline ParamPoint eval_param(const BigComplex& tau_in, mpfr_prec_t bits) {
    require_upper_half(tau_in);
    mpfr_prec_t prec = bits + kEtaGuardBits;
    BigFloat re = tau_in.re() + BigFloat(0L, prec);
    BigFloat im_target = tau_in.im() + BigFloat(0L, prec);
    double target = im_target.to_double();
    double hi = std::max(target, 1.5);

    BigFloat two_pi = BigFloat::pi(prec) * BigFloat(2L, prec);
    auto x_guess_at = [&](double im) {
        // principal branch leading term 4 q^{-2} = 4 e^{-4 pi i tau}
        BigFloat imf(im, prec);
        BigComplex e = exp(BigComplex(two_pi * BigFloat(2L, prec) * imf,
                                      -two_pi * BigFloat(2L, prec) * re));
        return e * BigFloat(4L, prec);
    };
    auto cube_at = [&](double im) {
        BigComplex tau(re, BigFloat(im, prec));
        BigComplex f9 = detail::f9_at(tau, prec);
        BigComplex y = BigComplex(BigFloat(-8L, prec), BigFloat(0L, prec)) * f9 -
                       BigComplex(BigFloat(12L, prec), BigFloat(0L, prec));
        BigComplex c = y * y - BigComplex(BigFloat(144L, prec), BigFloat(0L, prec));
        return std::pair<BigComplex, BigComplex>(c, y);
    };

    // Seed the branch at the top of the path.
    double margin = 0.0;
    BigComplex x = detail::nearest_cube_root(cube_at(hi).first, x_guess_at(hi), &margin);
    if (margin > 0.2)
        throw std::runtime_error("eval_param: ambiguous principal branch at the path top");

    double im = hi;
    double step = 0.10;
    const double min_step = 1e-5;
    while (im > target) {
        double next = std::max(target, im - step * im);
        BigComplex prev = x;
        double m = 0.0;
        BigComplex cand = detail::nearest_cube_root(cube_at(next).first, prev, &m);
        if (m > 0.5 && step > min_step) {
            step /= 2;  // too close to a branch-decision tie: refine
            continue;
        }
        if (m > 0.9)
            throw std::runtime_error("eval_param: branch tracking lost near a zero of x");
        x = cand;
        im = next;
        if (m < 0.1 && step < 0.25) step *= 1.5;
    }
    auto [c, y] = cube_at(target);
    double m = 0.0;
    x = detail::nearest_cube_root(c, x, &m);
    // Defining identity check.
    BigFloat resid = abs(y * y - x * x * x - BigComplex(BigFloat(144L, prec), BigFloat(0L, prec)));
    BigFloat scale = abs(y * y) + BigFloat(1L, prec);
    if (resid / scale > BigFloat::pow2(-static_cast<long>(bits) / 2, prec))
        throw std::runtime_error("eval_param: curve residual too large");
    return ParamPoint{x, y};
}

} // namespace sylv
