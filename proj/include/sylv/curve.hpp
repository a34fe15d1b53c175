// Weierstrass curve arithmetic over any supported field, plus the explicit
// CM endomorphism formulas on y^2 + y = x^3.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "sylv/tower.hpp"

namespace sylv {

inline bool is_zero_f(const mpq_class& x) { return x == 0; }
inline bool is_zero_f(const FpElt& x) { return x.is_zero(); }
inline bool is_zero_f(const Fp2Elt& x) { return x.is_zero(); }
inline bool is_zero_f(const QOmega& x) { return x.is_zero(); }
template <class F>
bool is_zero_f(const CubicExt<F>& x) { return x.is_zero(); }

template <class F>
struct WeierstrassModel {
    F a1, a2, a3, a4, a6;
    std::string label;

    F b2() const { return a1 * a1 + field_from_int(a1, 4) * a2; }
    F b4() const { return a1 * a3 + field_from_int(a1, 2) * a4; }
    F b6() const { return a3 * a3 + field_from_int(a1, 4) * a6; }
    F b8() const {
        F four = field_from_int(a1, 4);
        return a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    F c4() const { return b2() * b2() - field_from_int(a1, 24) * b4(); }
    F c6() const {
        return -(b2() * b2() * b2()) + field_from_int(a1, 36) * b2() * b4() -
               field_from_int(a1, 216) * b6();
    }
    F discriminant() const {
        F nine = field_from_int(a1, 9);
        F eight = field_from_int(a1, 8);
        F b2v = b2(), b4v = b4(), b6v = b6(), b8v = b8();
        return -(b2v * b2v * b8v) - eight * (b4v * b4v * b4v) -
               field_from_int(a1, 27) * b6v * b6v + nine * b2v * b4v * b6v;
    }
};

// y^2 + y = x^3 + k  (the family every E^n_min with odd n lives in).
template <class F>
WeierstrassModel<F> curve_y2py_x3k(const F& k, std::string label = {}) {
    F zero = field_from_int(k, 0);
    return WeierstrassModel<F>{zero, zero, field_from_int(k, 1), zero, k, std::move(label)};
}

// y^2 = x^3 + k.
template <class F>
WeierstrassModel<F> curve_y2_x3k(const F& k, std::string label = {}) {
    F zero = field_from_int(k, 0);
    return WeierstrassModel<F>{zero, zero, zero, zero, k, std::move(label)};
}

template <class F>
class CurvePoint {
public:
    CurvePoint() : infinity_(true) {}
    CurvePoint(F x, F y) : x_(std::move(x)), y_(std::move(y)), infinity_(false) {}
    static CurvePoint infinity() { return CurvePoint(); }

    bool is_infinity() const { return infinity_; }
    const F& x() const {
        if (infinity_) throw std::domain_error("CurvePoint: x() of infinity");
        return x_;
    }
    const F& y() const {
        if (infinity_) throw std::domain_error("CurvePoint: y() of infinity");
        return y_;
    }
    bool operator==(const CurvePoint& o) const {
        if (infinity_ || o.infinity_) return infinity_ == o.infinity_;
        return x_ == o.x_ && y_ == o.y_;
    }
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }

private:
    F x_, y_;
    bool infinity_;
};

template <class F>
bool on_curve(const CurvePoint<F>& P, const WeierstrassModel<F>& E) {
    if (P.is_infinity()) return true;
    const F& x = P.x();
    const F& y = P.y();
    F lhs = y * y + E.a1 * x * y + E.a3 * y;
    F rhs = x * x * x + E.a2 * x * x + E.a4 * x + E.a6;
    return lhs == rhs;
}

template <class F>
CurvePoint<F> neg(const CurvePoint<F>& P, const WeierstrassModel<F>& E) {
    if (P.is_infinity()) return P;
    return CurvePoint<F>(P.x(), -P.y() - E.a1 * P.x() - E.a3);
}

template <class F>
CurvePoint<F> add(const CurvePoint<F>& P, const CurvePoint<F>& Q, const WeierstrassModel<F>& E,
                  bool validate = false) {
    if (validate && (!on_curve(P, E) || !on_curve(Q, E)))
        throw std::invalid_argument("add: point not on curve");
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    const F& x1 = P.x();
    const F& y1 = P.y();
    const F& x2 = Q.x();
    const F& y2 = Q.y();
    F lambda, nu;
    if (x1 == x2) {
        if (is_zero_f(F(y1 + y2 + E.a1 * x2 + E.a3))) return CurvePoint<F>::infinity();
        // tangent line
        F den = field_from_int(x1, 2) * y1 + E.a1 * x1 + E.a3;
        lambda = (field_from_int(x1, 3) * x1 * x1 + field_from_int(x1, 2) * E.a2 * x1 + E.a4 -
                  E.a1 * y1) /
                 den;
        nu = (-(x1 * x1 * x1) + E.a4 * x1 + field_from_int(x1, 2) * E.a6 - E.a3 * y1) / den;
    } else {
        lambda = (y2 - y1) / (x2 - x1);
        nu = (y1 * x2 - y2 * x1) / (x2 - x1);
    }
    F x3 = lambda * lambda + E.a1 * lambda - E.a2 - x1 - x2;
    F y3 = -(lambda + E.a1) * x3 - nu - E.a3;
    return CurvePoint<F>(x3, y3);
}

template <class F>
CurvePoint<F> sub(const CurvePoint<F>& P, const CurvePoint<F>& Q, const WeierstrassModel<F>& E) {
    return add(P, neg(Q, E), E);
}

template <class F>
CurvePoint<F> scalar_mul(const mpz_class& k, CurvePoint<F> P, const WeierstrassModel<F>& E) {
    mpz_class n = k;
    if (n < 0) {
        n = -n;
        P = neg(P, E);
    }
    CurvePoint<F> result = CurvePoint<F>::infinity();
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = add(result, P, E);
        P = add(P, P, E);
        n >>= 1;
    }
    return result;
}

template <class F>
CurvePoint<F> scalar_mul(long k, const CurvePoint<F>& P, const WeierstrassModel<F>& E) {
    return scalar_mul(mpz_class(k), P, E);
}

// Multiplication by sqrt(-3) on E^1_min: y^2 + y = x^3, for fields containing
// omega; concretely the chord sum [omega]P - [omega^2]P where [omega](x,y) =
// (omega x, y). Points with x = 0 form the kernel and map to infinity.
template <class F>
CurvePoint<F> mul_sqrt_minus3(const CurvePoint<F>& P) {
    if (P.is_infinity()) return P;
    const F& x = P.x();
    const F& y = P.y();
    if (is_zero_f(x)) return CurvePoint<F>::infinity();
    F one = field_from_int(x, 1);
    F three = field_from_int(x, 3);
    F w = omega_like(x);
    F s = w + w + one;  // sqrt(-3) = 2*omega + 1 = omega - omega^2
    F x3p1 = x * x * x + one;
    F xs = x3p1 / (-(three * x * x));
    F ys = ((y + y + one) * x3p1) / (three * s * x * x * x) - (y - w) / s - one;
    return CurvePoint<F>(xs, ys);
}

// Tripling on E^1_min via the explicit degree-9 x-formula. The y-coordinate
// is taken from chord-tangent tripling; the x-coordinates are asserted equal.
template <class F>
CurvePoint<F> triple_explicit(const CurvePoint<F>& P) {
    if (P.is_infinity()) return P;
    const F& x = P.x();
    WeierstrassModel<F> E = curve_y2py_x3k(field_from_int(x, 0), "E^1_min");
    F one = field_from_int(x, 1);
    F x3 = x * x * x;
    if (is_zero_f(x) || is_zero_f(F(x3 + one))) return CurvePoint<F>::infinity();
    F x9 = x3 * x3 * x3;
    F numer = x9 - field_from_int(x, 24) * x3 * x3 + field_from_int(x, 3) * x3 + one;
    F denom = field_from_int(x, 9) * x * x * (x3 + one) * (x3 + one);
    F xt = numer / denom;
    CurvePoint<F> T = scalar_mul(3, P, E);
    if (T.is_infinity() || T.x() != xt)
        throw std::logic_error("triple_explicit: x-coordinate mismatch with chord-tangent tripling");
    return T;
}

} // namespace sylv
