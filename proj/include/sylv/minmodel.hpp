// Minimal Weierstrass models of the cubic-twist family E^n : y^2 = x^3 + 16n^2.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "sylv/curve.hpp"

namespace sylv {

using RationalCurve = WeierstrassModel<mpq_class>;
using RationalPoint = CurvePoint<mpq_class>;

// Trial-division factorization; remainder must be 1 or a probable prime
// (or a small power of one), which covers every desk-scale input here.
inline std::map<mpz_class, unsigned> factor_mpz(mpz_class n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::invalid_argument("factor_mpz: zero");
    std::map<mpz_class, unsigned> out;
    for (mpz_class d = 2; d * d <= n && d < 1000000; d += (d == 2 ? 1 : 2)) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
            ++out[n];
        } else {
            mpz_class r;
            if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), 2)) {
                if (!mpz_probab_prime_p(r.get_mpz_t(), 40))
                    throw std::domain_error("factor_mpz: cofactor too hard");
                out[r] += 2;
            } else {
                throw std::domain_error("factor_mpz: cofactor too hard");
            }
        }
    }
    return out;
}

inline bool is_cube_free(const mpz_class& n) {
    if (n == 0) return false;
    for (const auto& [p, e] : factor_mpz(n))
        if (e >= 3) return false;
    return true;
}

struct MinimalModelResult {
    RationalCurve model;
    // (x, y) on E^n equals (scale_x * X, scale_y * Y + shift_y) on the model.
    mpq_class scale_x, scale_y, shift_y;
};

// E^n : y^2 = x^3 + 16 n^2.
inline RationalCurve curve_En(const mpz_class& n) {
    return curve_y2_x3k(mpq_class(16 * n * n), "E^" + n.get_str());
}

// Minimal model of E^n: Y^2 = X^3 + n^2/4 (even n), Y^2+Y = X^3 + (n^2-1)/4
// (odd n); transformations x = 4X, y = 8Y resp. x = 4X, y = 8Y + 4.
inline MinimalModelResult minimal_model(const mpz_class& n) {
    if (!is_cube_free(n)) throw std::invalid_argument("minimal_model: n must be cube-free");
    MinimalModelResult res;
    std::string label = "E^" + n.get_str() + "_min";
    if (n % 2 == 0) {
        res.model = curve_y2_x3k(mpq_class(mpq_class(n * n) / 4), label);
        res.scale_x = 4;
        res.scale_y = 8;
        res.shift_y = 0;
    } else {
        res.model = curve_y2py_x3k(mpq_class(mpq_class(n * n - 1) / 4), label);
        res.scale_x = 4;
        res.scale_y = 8;
        res.shift_y = 4;
    }
    return res;
}

// Map a point on the minimal model back to E^n.
inline RationalPoint to_En(const MinimalModelResult& m, const RationalPoint& P) {
    if (P.is_infinity()) return P;
    return RationalPoint(m.scale_x * P.x(), m.scale_y * P.y() + m.shift_y);
}

// Map a point on E^n to the minimal model.
inline RationalPoint from_En(const MinimalModelResult& m, const RationalPoint& P) {
    if (P.is_infinity()) return P;
    return RationalPoint(P.x() / m.scale_x, (P.y() - m.shift_y) / m.scale_y);
}

} // namespace sylv
