// Néron–Tate canonical heights over Q (absolute normalization): archimedean
// local height by Tate's series plus non-archimedean corrections, after
// clearing Tamagawa/torsion contributions, with a doubling-limit cross-check.
#pragma once

#include <cmath>
#include <stdexcept>

#include "sylv/bigfloat.hpp"
#include "sylv/tate.hpp"

namespace sylv {

// Archimedean local height lambda_oo of a point with x-coordinate x, by
// Tate's series: with t0 = 1/x,
//   z(t) = 1 - b4 t^2 - 2 b6 t^3 - b8 t^4,
//   w(t) = 4 t + b2 t^2 + 2 b4 t^3 + b6 t^4,    t_{n+1} = w(t_n)/z(t_n),
//   lambda_oo = (1/2) log|x| + (1/8) sum_n 4^{-n} log|z_n|.
// t_{n+1} = 1/x(2^{n+1} P) identically, so each partial sum is an exact
// telescoping identity and the 4^{-n} factor forces convergence as long as
// the orbit avoids z = 0 (heights bound how close it can get).
inline BigFloat archimedean_lambda(const mpq_class& x0, const RationalCurve& E,
                                   mpfr_prec_t prec = 320) {
    if (x0 == 0)
        throw std::invalid_argument("archimedean_lambda: x = 0 (clear torsion/Tamagawa first)");
    BigFloat b2(mpq_class(E.b2()), prec), b4(mpq_class(E.b4()), prec);
    BigFloat b6(mpq_class(E.b6()), prec), b8(mpq_class(E.b8()), prec);
    BigFloat one(1L, prec), two(2L, prec), four(4L, prec);
    BigFloat x(mpq_class(x0), prec);
    BigFloat t = one / x;
    BigFloat lam = log(abs(x)) / two;
    BigFloat f = one / BigFloat(8L, prec);
    long n_terms = static_cast<long>(prec) / 2 + 16;  // 4^{-n} ~ 2^{-2n}
    for (long n = 0; n < n_terms; ++n) {
        BigFloat t2 = t * t;
        BigFloat z = one - b4 * t2 - two * b6 * t2 * t - b8 * t2 * t2;
        BigFloat w = four * t + b2 * t2 + two * b4 * t2 * t + b6 * t2 * t2;
        if (z.is_zero()) throw std::runtime_error("archimedean_lambda: hit a zero of z");
        lam = lam + f * log(abs(z));
        f = f / four;
        t = w / z;
    }
    return lam;
}

// Canonical height of a rational point on an integral (minimal) model.
// Strategy: multiply by M = lcm(12, Tamagawa numbers) so the image has
// nonsingular identity-component reduction everywhere; then every finite
// local height is (1/2) max(0, -v_p(x)) log p, summing to (1/2) log den(x),
// and h(P) = 2 (lambda_oo(MP) + (1/2) log den(x(MP))) / M^2. Torsion (killed
// by M, by Mazur) returns exactly 0. The leading 2 selects the normalization
// h(P) = lim 4^{-k} log H(x(2^k P)) (the one used for BSD regulators).
inline double canonical_height(const RationalPoint& P, const RationalCurve& E,
                               mpfr_prec_t prec = 320) {
    if (P.is_infinity()) return 0.0;
    if (!on_curve(P, E)) throw std::invalid_argument("canonical_height: point not on curve");
    mpz_class M = height_clearing_multiple(E);
    RationalPoint Q = scalar_mul(M, P, E);
    if (Q.is_infinity()) return 0.0;  // torsion
    // Tate's series needs x away from 0; doubling preserves the clearing
    // properties, so absorb extra doublings into the denominator 4^j M^2.
    mpz_class denom = M * M;
    mpq_class x = Q.x();
    int guard = 0;
    while (abs(x) < mpq_class(1, 2)) {
        Q = add(Q, Q, E);
        denom *= 4;
        if (Q.is_infinity()) return 0.0;
        x = Q.x();
        if (++guard > 64) throw std::runtime_error("canonical_height: orbit stuck near x = 0");
    }
    x.canonicalize();
    BigFloat lam = archimedean_lambda(x, E, prec);
    BigFloat h = lam + log(BigFloat(mpz_class(x.get_den()), prec)) / BigFloat(2L, prec);
    return (BigFloat(2L, prec) * h / BigFloat(denom, prec)).to_double();
}

// Low-precision cross-check: h(P) = lim_k 4^{-k} log H(x(2^k P)) with
// H(a/b) = max(|a|, |b|); error O(4^{-k}).
inline double height_doubling_limit(const RationalPoint& P, const RationalCurve& E, int k = 8) {
    if (P.is_infinity()) return 0.0;
    RationalPoint Q = P;
    double scale = 1.0;
    for (int i = 0; i < k; ++i) {
        Q = add(Q, Q, E);
        if (Q.is_infinity()) return 0.0;
        scale /= 4.0;
    }
    mpq_class x = Q.x();
    x.canonicalize();
    mpz_class num = x.get_num();
    if (num < 0) num = -num;
    mpz_class den = x.get_den();
    const mpz_class& big = num > den ? num : den;
    if (big == 0) return 0.0;
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, big.get_mpz_t());
    return scale * (std::log(d) + exp2 * 0.6931471805599453094);
}

// Torsion order if P is torsion of order <= bound, else 0.
inline int torsion_order(const RationalPoint& P, const RationalCurve& E, int bound = 12) {
    if (P.is_infinity()) return 1;
    RationalPoint Q = P;  // Q = k * P at the top of iteration k
    for (int k = 1; k <= bound; ++k) {
        if (Q.is_infinity()) return k;
        Q = add(Q, P, E);
    }
    return 0;
}

} // namespace sylv
