// Real periods of the curves E^n via the AGM, with a direct-integration
// cross-check, plus the Prop-7.2 period relation.
#pragma once

#include <stdexcept>

#include "sylv/bigfloat.hpp"
#include "sylv/minmodel.hpp"
#include "sylv/qseries.hpp"

namespace sylv {

namespace detail {

// Complex AGM with the standard "right choice" of square root: at each step
// pick the root of (a*b) closer to (a+b)/2.
inline BigComplex complex_agm(BigComplex a, BigComplex b) {
    mpfr_prec_t prec = std::max(a.prec(), b.prec());
    BigFloat tol = BigFloat::pow2(-static_cast<long>(prec) + 16, prec);
    for (int i = 0; i < 4 * 64 + static_cast<int>(prec); ++i) {
        BigComplex am = (a + b) / BigFloat(2L, prec);
        BigComplex gm = sqrt(a * b);
        if (abs(am - gm) > abs(am + gm)) gm = -gm;
        a = am;
        b = gm;
        if (abs(a - b) < tol * abs(a)) return a;
    }
    throw std::runtime_error("complex_agm: no convergence");
}

} // namespace detail

// Least positive real period of a minimal model with negative discriminant
// (one real component). The quartic-free cubic is P(x) = 4x^3 + b2 x^2 +
// 2 b4 x + b6 = 4 (x - e1)(x - e2)(x - e3) with e1 real and e2 = conj(e3);
// then  Omega = 2 * int_{e1}^{inf} dx / sqrt(P) = pi / AGM(sqrt(e1 - e2),
// sqrt(e1 - e3)).
inline BigFloat real_period(const RationalCurve& E, mpfr_prec_t bits) {
    if (E.discriminant() >= 0)
        throw std::invalid_argument("real_period: only negative-discriminant curves supported");
    mpfr_prec_t prec = bits + 64;
    BigFloat b2(E.b2(), prec), b4(E.b4(), prec), b6(E.b6(), prec);
    // Real root of P(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 by bisection.
    auto P = [&](const BigFloat& x) {
        return ((BigFloat(4L, prec) * x + b2) * x + BigFloat(2L, prec) * b4) * x + b6;
    };
    BigFloat lo(-1L, prec), hi(1L, prec);
    while (P(lo).sign() >= 0) lo = lo * BigFloat(2L, prec) - BigFloat(1L, prec);
    while (P(hi).sign() <= 0) hi = hi * BigFloat(2L, prec) + BigFloat(1L, prec);
    for (mpfr_prec_t i = 0; i < prec + 8; ++i) {
        BigFloat mid = (lo + hi) / BigFloat(2L, prec);
        if (P(mid).sign() <= 0)
            lo = mid;
        else
            hi = mid;
    }
    BigFloat e1 = (lo + hi) / BigFloat(2L, prec);
    // Deflate: P(x) = 4 (x - e1)(x^2 + s x + t).
    BigFloat four(4L, prec);
    BigFloat s = b2 / four + e1;
    BigFloat t = -b6 / (four * e1);  // product of complex roots = e2*e3 = b6/(-4 e1)... via Vieta
    // Vieta for 4x^3+b2x^2+2b4x+b6: e1*e2*e3 = -b6/4; e2*e3 = -b6/(4 e1).
    BigFloat disc = s * s - four * t;  // of x^2 + s x + t, negative here
    if (disc.sign() >= 0)
        throw std::runtime_error("real_period: unexpected real root pair");
    BigFloat beta = sqrt(-disc) / BigFloat(2L, prec);
    BigFloat alpha = -s / BigFloat(2L, prec);
    // e2, e3 = alpha +- i beta;   Omega = pi / AGM(sqrt(e1-e2), sqrt(e1-e3)).
    BigComplex u(e1 - alpha, -beta);
    BigComplex v(e1 - alpha, beta);
    BigComplex agm = detail::complex_agm(sqrt(u), sqrt(v));
    BigFloat pi = BigFloat::pi(prec);
    BigFloat omega = (BigComplex(pi, BigFloat(0L, prec)) / agm).re();
    if (omega.sign() < 0) omega = -omega;
    return omega;
}

// Direct numerical integration cross-check:
// Omega = 2 * int_{e1}^{inf} dx / sqrt(P(x)), x = e1 + u^2, u = s/(1-s),
// evaluated by composite Simpson on s in [0, 1).
inline BigFloat real_period_integration(const RationalCurve& E, long n_panels = 4096) {
    mpfr_prec_t prec = 192;
    if (E.discriminant() >= 0)
        throw std::invalid_argument("real_period_integration: negative discriminant only");
    BigFloat b2(E.b2(), prec), b4(E.b4(), prec), b6(E.b6(), prec);
    auto P = [&](const BigFloat& x) {
        return ((BigFloat(4L, prec) * x + b2) * x + BigFloat(2L, prec) * b4) * x + b6;
    };
    BigFloat lo(-1L, prec), hi(1L, prec);
    while (P(lo).sign() >= 0) lo = lo * BigFloat(2L, prec) - BigFloat(1L, prec);
    while (P(hi).sign() <= 0) hi = hi * BigFloat(2L, prec) + BigFloat(1L, prec);
    for (int i = 0; i < 300; ++i) {
        BigFloat mid = (lo + hi) / BigFloat(2L, prec);
        if (P(mid).sign() <= 0)
            lo = mid;
        else
            hi = mid;
    }
    BigFloat e1 = (lo + hi) / BigFloat(2L, prec);
    // After x = e1 + u^2: integrand 2*2u du / sqrt(P(e1+u^2)); P has a simple
    // zero at e1 so P(e1+u^2) ~ C u^2 and the integrand is smooth at u = 0.
    auto g = [&](const BigFloat& s) {
        BigFloat one(1L, prec);
        BigFloat u = s / (one - s);
        BigFloat du = one / ((one - s) * (one - s));
        BigFloat x = e1 + u * u;
        BigFloat val = P(x);
        if (val.sign() <= 0) return BigFloat(0L, prec);
        // sqrt(P(e1+u^2)) = u * sqrt(Q(u)) with Q smooth; divide u out exactly.
        BigFloat q = val / (u * u);
        if (s.is_zero()) {
            // limit u->0: P'(e1) = 12 e1^2 + 2 b2 e1 + 2 b4
            q = (BigFloat(12L, prec) * e1 * e1 + BigFloat(2L, prec) * b2 * e1 +
                 BigFloat(2L, prec) * b4);
        }
        return BigFloat(4L, prec) * du / sqrt(q);
    };
    // Composite Simpson on [0, 1 - eps].
    BigFloat one(1L, prec);
    BigFloat eps = BigFloat::pow2(-40, prec);
    BigFloat a(0L, prec), b = one - eps;
    BigFloat hstep = (b - a) / BigFloat(n_panels, prec);
    BigFloat sum = g(a) + g(b);
    for (long i = 1; i < n_panels; ++i) {
        BigFloat xi = a + hstep * BigFloat(i, prec);
        sum += g(xi) * BigFloat(i % 2 == 1 ? 4L : 2L, prec);
    }
    return sum * hstep / BigFloat(3L, prec);
}

// Omega^n: the minimal positive real period of the minimal model of E^n,
// i.e. the period of the invariant differential on E^n_min (the BSD period).
// It equals 2 * (real period of the non-minimal model y^2 = x^3 + 16 n^2),
// because the minimalizing substitution x = 4X, y = 8Y + 4 halves dx/(2y+1).
inline BigFloat period_of_twist(const mpz_class& n, mpfr_prec_t bits) {
    MinimalModelResult m = minimal_model(n);
    return real_period(m.model, bits);
}

struct PeriodRelationReport {
    bool pass = false;
    double residual_1 = 0.0;  // |p Omega^p Omega^{9p^2} - (Omega^3)^2| / (Omega^3)^2
    double residual_2 = 0.0;  // |p Omega^{p^2} Omega^{9p} - (Omega^3)^2| / (Omega^3)^2
};

// Prop 7.2: p * Omega^p * Omega^{9p^2} = p * Omega^{p^2} * Omega^{9p} = (Omega^3)^2.
inline PeriodRelationReport verify_period_relation(std::uint64_t p, mpfr_prec_t bits = 192,
                                                   double tolerance = 1e-8) {
    mpz_class P(static_cast<unsigned long>(p));
    std::vector<mpz_class> twists{P, mpz_class(9 * P * P), mpz_class(P * P), mpz_class(9 * P),
                                  mpz_class(3)};
    for (const mpz_class& n : twists)
        if (!is_cube_free(n))
            throw std::invalid_argument("verify_period_relation: non-cube-free twist");
    BigFloat om_p = period_of_twist(twists[0], bits);
    BigFloat om_9p2 = period_of_twist(twists[1], bits);
    BigFloat om_p2 = period_of_twist(twists[2], bits);
    BigFloat om_9p = period_of_twist(twists[3], bits);
    BigFloat om_3 = period_of_twist(3, bits);
    BigFloat rhs = om_3 * om_3;
    BigFloat pf(P, bits);
    PeriodRelationReport rep;
    rep.residual_1 = (abs(pf * om_p * om_9p2 - rhs) / rhs).to_double();
    rep.residual_2 = (abs(pf * om_p2 * om_9p - rhs) / rhs).to_double();
    rep.pass = rep.residual_1 < tolerance && rep.residual_2 < tolerance;
    return rep;
}

// Recompute (g2, g3) from the period lattice via Eisenstein q-series and
// compare with the curve invariants g2 = 0, g3 = -b6 of u^2 = 4x^3 + b6
// (b2 = b4 = 0). The lattice of such a curve with negative discriminant is
// hexagonal with real generator Omega and Z-basis {Omega, Omega*(3 +
// sqrt(-3))/6} (verified against direct lattice sums; the SL2-equivalent
// point in the fundamental domain is e^{i pi/3}, but the basis quotient
// itself is tau = 1/2 + sqrt(-3)/6, q = -e^{-pi/sqrt 3}).
struct LatticeCheck {
    double g2_error = 0.0;
    double g3_error = 0.0;
};

inline LatticeCheck lattice_invariants_check(const RationalCurve& E, mpfr_prec_t bits = 192) {
    if (E.b2() != 0 || E.b4() != 0)
        throw std::invalid_argument("lattice_invariants_check: expects b2 = b4 = 0");
    mpfr_prec_t prec = bits + 32;
    BigFloat omega1 = real_period(E, prec);
    // tau = 1/2 + i/(2 sqrt 3), q = -e^{-pi/sqrt 3} (real, negative).
    BigFloat pi = BigFloat::pi(prec);
    BigFloat s3 = sqrt(BigFloat(3L, prec));
    BigFloat qv = -exp(-pi / s3);
    long terms = static_cast<long>(2 * prec / 5) + 32;  // |q|^n ~ e^{-1.81 n}
    QSeries e4 = e4_series(terms), e6 = e6_series(terms);
    BigFloat E4(0L, prec), E6(0L, prec), qp(1L, prec);
    for (long i = 0; i <= terms; ++i) {
        E4 += BigFloat(e4.coeff_index(i), prec) * qp;
        E6 += BigFloat(e6.coeff_index(i), prec) * qp;
        qp *= qv;
    }
    BigFloat c = (BigFloat(2L, prec) * pi) / omega1;
    BigFloat c2 = c * c;
    BigFloat c4 = c2 * c2;
    BigFloat g2 = c4 * E4 / BigFloat(12L, prec);
    BigFloat g3 = c4 * c2 * E6 / BigFloat(216L, prec);
    BigFloat b6(E.b6(), prec);
    LatticeCheck out;
    out.g2_error = abs(g2).to_double();
    out.g3_error = abs(g3 + b6).to_double();
    return out;
}

} // namespace sylv
