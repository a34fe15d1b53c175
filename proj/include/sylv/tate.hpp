// Tate's algorithm over Q: Kodaira type, conductor exponent and Tamagawa
// number at a prime, plus the conductor of an integral model.
#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sylv/minmodel.hpp"

namespace sylv {

struct LocalReductionData {
    mpz_class prime;
    std::string kodaira_type;    // "I0", "In", "I0*", "In*", "II", ..., "II*"
    int n = 0;                   // the n of In / In*
    int conductor_exponent = 0;
    int tamagawa = 1;
    int vdisc = 0;               // valuation of the minimal discriminant
    int scaling_steps = 0;       // times (x,y) -> (p^2 x, p^3 y) was applied
    bool split_multiplicative = false;
};

namespace detail {

struct IntModel {
    mpz_class a1, a2, a3, a4, a6;

    mpz_class b2() const { return a1 * a1 + 4 * a2; }
    mpz_class b4() const { return a1 * a3 + 2 * a4; }
    mpz_class b6() const { return a3 * a3 + 4 * a6; }
    mpz_class b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    mpz_class disc() const {
        mpz_class B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    // x = x' + r, y = y' + s x' + t.
    void shift(const mpz_class& r, const mpz_class& s, const mpz_class& t) {
        mpz_class na1 = a1 + 2 * s;
        mpz_class na2 = a2 - s * a1 + 3 * r - s * s;
        mpz_class na3 = a3 + r * a1 + 2 * t;
        mpz_class na4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        mpz_class na6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        a1 = na1; a2 = na2; a3 = na3; a4 = na4; a6 = na6;
    }

    // (x, y) -> (p^2 x, p^3 y): divides a_i by p^i. Requires divisibility.
    void rescale(const mpz_class& p) {
        mpz_class p2 = p * p, p3 = p2 * p, p4 = p3 * p, p6 = p4 * p2;
        if (a1 % p != 0 || a2 % p2 != 0 || a3 % p3 != 0 || a4 % p4 != 0 || a6 % p6 != 0)
            throw std::logic_error("tate: rescale divisibility failure");
        a1 /= p; a2 /= p2; a3 /= p3; a4 /= p4; a6 /= p6;
    }
};

inline int valuation(mpz_class n, const mpz_class& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline mpz_class mod_p(const mpz_class& x, const mpz_class& p) {
    mpz_class r = x % p;
    if (r < 0) r += p;
    return r;
}

inline mpz_class inv_mod(const mpz_class& x, const mpz_class& p) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()))
        throw std::domain_error("tate: not invertible");
    return r;
}

// Number of roots of sum_i c[i] x^i in F_p (c in low-to-high order). Used on
// degree <= 3 polynomials at desk-scale primes, so direct scanning is fine.
inline int count_roots_fp(const std::vector<mpz_class>& c, const mpz_class& p) {
    int count = 0;
    for (mpz_class x = 0; x < p; ++x) {
        mpz_class acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mod_p(acc * x + *it, p);
        if (acc == 0) ++count;
    }
    return count;
}

// A root in F_p of a quadratic known to have a double root there.
inline mpz_class double_root_quadratic(const mpz_class& A, const mpz_class& B, const mpz_class& C,
                                       const mpz_class& p) {
    if (p == 2) {
        for (mpz_class x = 0; x < 2; ++x)
            if (mod_p(A * x * x + B * x + C, p) == 0) return x;
        throw std::logic_error("tate: expected double root mod 2");
    }
    return mod_p(-B * inv_mod(mod_p(2 * A, p), p), p);
}

// Move the (unique) singular point mod p of a p-singular model to (0,0).
inline void move_singular_point(IntModel& E, const mpz_class& p) {
    if (p <= 3) {
        for (mpz_class x0 = 0; x0 < p; ++x0) {
            for (mpz_class y0 = 0; y0 < p; ++y0) {
                mpz_class F = y0 * y0 + E.a1 * x0 * y0 + E.a3 * y0 - x0 * x0 * x0 -
                              E.a2 * x0 * x0 - E.a4 * x0 - E.a6;
                mpz_class Fx = E.a1 * y0 - 3 * x0 * x0 - 2 * E.a2 * x0 - E.a4;
                mpz_class Fy = 2 * y0 + E.a1 * x0 + E.a3;
                if (mod_p(F, p) == 0 && mod_p(Fx, p) == 0 && mod_p(Fy, p) == 0) {
                    E.shift(x0, 0, y0);
                    return;
                }
            }
        }
        throw std::logic_error("tate: singular point not found");
    }
    // p >= 5: complete the square; the singular x is the repeated root of
    // C(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 mod p, i.e. a root of gcd(C, C').
    mpz_class b2 = mod_p(E.b2(), p), b4 = mod_p(E.b4(), p), b6 = mod_p(E.b6(), p);
    // The linear remainder of C mod C' (C' = 12x^2 + 2 b2 x + 2 b4) carries
    // the repeated root; a zero remainder means a triple root.
    mpz_class c3 = 4, c2 = b2, c1 = 2 * b4, c0 = b6;
    mpz_class d2 = 12, d1 = 2 * b2, d0 = 2 * b4;
    // first step: subtract (c3/d2) x * C'
    mpz_class q1 = mod_p(c3 * inv_mod(d2, p), p);
    c2 = mod_p(c2 - q1 * d1, p);
    c1 = mod_p(c1 - q1 * d0, p);
    // second step: subtract (c2/d2) * C'
    mpz_class q0 = mod_p(c2 * inv_mod(d2, p), p);
    c1 = mod_p(c1 - q0 * d1, p);
    c0 = mod_p(c0 - q0 * d0, p);
    mpz_class x0;
    if (c1 != 0) {
        x0 = mod_p(-c0 * inv_mod(c1, p), p);
    } else {
        if (c0 != 0) throw std::logic_error("tate: cubic has no repeated root");
        // triple root: root of C'' = 24x + 2 b2.
        x0 = mod_p(-b2 * inv_mod(12, p), p);
    }
    mpz_class y0 = mod_p(-(E.a1 * x0 + E.a3) * inv_mod(2, p), p);
    E.shift(x0, 0, y0);
}

// Arrange p|a1,a2, p^2|a3,a4, p^3|a6 (entered with (0,0) singular, p|b2,
// and steps II/III/IV ruled out). For p <= 3 a direct search is simplest.
inline void normalize_for_star(IntModel& E, const mpz_class& p) {
    if (p <= 3) {
        mpz_class p2 = p * p, p3 = p2 * p;
        for (mpz_class s = 0; s < p; ++s) {
            for (mpz_class r = 0; r < p3; ++r) {
                for (mpz_class t = 0; t < p3; ++t) {
                    IntModel T = E;
                    T.shift(r, s, t);
                    if (T.a1 % p == 0 && T.a2 % p == 0 && T.a3 % p2 == 0 && T.a4 % p2 == 0 &&
                        T.a6 % p3 == 0) {
                        E = T;
                        return;
                    }
                }
            }
        }
        throw std::logic_error("tate: normalization search failed");
    }
    mpz_class p2 = p * p;
    mpz_class s = mod_p(-E.a1 * inv_mod(2, p), p);
    E.shift(0, s, 0);
    mpz_class r = mod_p(-E.a2 * inv_mod(3, p), p);
    E.shift(r, 0, 0);
    mpz_class t = mod_p(-E.a3 * inv_mod(2, p2), p2);
    E.shift(0, 0, t);
    if (!(E.a1 % p == 0 && E.a2 % p == 0 && E.a3 % p2 == 0 && E.a4 % p2 == 0 &&
          E.a6 % (p2 * p) == 0))
        throw std::logic_error("tate: normalization failed");
}

} // namespace detail

// Run Tate's algorithm on an integral model at prime p. Non-minimal models
// are rescaled in place (step 11) and counted in scaling_steps.
inline LocalReductionData tate_local(const RationalCurve& curve, const mpz_class& p) {
    using namespace detail;
    if (!mpz_probab_prime_p(p.get_mpz_t(), 40))
        throw std::invalid_argument("tate_local: p must be prime");
    auto as_int = [](const mpq_class& q) {
        if (q.get_den() != 1) throw std::invalid_argument("tate_local: model not integral");
        return mpz_class(q.get_num());
    };
    IntModel E{as_int(curve.a1), as_int(curve.a2), as_int(curve.a3), as_int(curve.a4),
               as_int(curve.a6)};
    LocalReductionData out;
    out.prime = p;

    for (;;) {
        mpz_class disc = E.disc();
        if (disc == 0) throw std::invalid_argument("tate_local: singular curve");
        int n = (disc % p == 0) ? valuation(disc, p) : 0;
        out.vdisc = n;
        if (n == 0) {
            out.kodaira_type = "I0";
            out.conductor_exponent = 0;
            out.tamagawa = 1;
            return out;
        }
        move_singular_point(E, p);

        if (E.b2() % p != 0) {
            // Multiplicative reduction: type In.
            out.kodaira_type = "I" + std::to_string(n);
            out.n = n;
            out.conductor_exponent = 1;
            // Split iff T^2 + a1 T - a2 has roots in F_p.
            bool split = count_roots_fp({mod_p(-E.a2, p), mod_p(E.a1, p), 1}, p) > 0;
            out.split_multiplicative = split;
            out.tamagawa = split ? n : (n % 2 == 0 ? 2 : 1);
            return out;
        }

        mpz_class p2 = p * p, p3 = p2 * p, p4 = p3 * p;
        if (E.a6 % p2 != 0) {
            out.kodaira_type = "II";
            out.conductor_exponent = n;
            out.tamagawa = 1;
            return out;
        }
        if (E.b8() % p3 != 0) {
            out.kodaira_type = "III";
            out.conductor_exponent = n - 1;
            out.tamagawa = 2;
            return out;
        }
        if (E.b6() % p3 != 0) {
            out.kodaira_type = "IV";
            out.conductor_exponent = n - 2;
            // c = 3 iff Y^2 + (a3/p) Y - a6/p^2 splits in F_p.
            int roots = count_roots_fp({mod_p(-E.a6 / p2, p), mod_p(E.a3 / p, p), 1}, p);
            out.tamagawa = roots > 0 ? 3 : 1;
            return out;
        }

        normalize_for_star(E, p);
        // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3) over F_p.
        mpz_class A = mod_p(E.a2 / p, p), B = mod_p(E.a4 / p2, p), C = mod_p(E.a6 / p3, p);
        // Discriminant-style classification via gcd structure: count distinct
        // roots by checking P and P' common roots directly.
        auto P_at = [&](const mpz_class& x) { return mod_p(((x + A) * x + B) * x + C, p); };
        auto Pp_at = [&](const mpz_class& x) { return mod_p((3 * x + 2 * A) * x + B, p); };
        std::vector<mpz_class> repeated;
        for (mpz_class x = 0; x < p; ++x)
            if (P_at(x) == 0 && Pp_at(x) == 0) repeated.push_back(x);

        if (repeated.empty()) {
            out.kodaira_type = "I0*";
            out.conductor_exponent = n - 4;
            out.tamagawa = 1 + count_roots_fp({C, B, A, 1}, p);
            return out;
        }

        mpz_class x0 = repeated[0];
        bool triple = (mod_p(3 * x0 + A, p) == 0);  // sum of roots = -A
        // Move the repeated root of P to T = 0, i.e. x-shift by p*x0.
        E.shift(p * x0, 0, 0);

        if (!triple) {
            // Type Im*, m >= 1: the alternating subprocedure.
            if (valuation(E.a2, p) != 1 || (E.a4 % p3 != 0) || (E.a6 % p4 != 0))
                throw std::logic_error("tate: Im* entry conditions failed");
            int m = 1;
            mpz_class mx = p2, my = p2;
            for (;;) {
                // Quadratic in Y: Y^2 + (a3/my) Y - a6/(mx*my).
                mpz_class a3t = mod_p(E.a3 / my, p), a6t = mod_p(E.a6 / (mx * my), p);
                if (mod_p(a3t * a3t + 4 * a6t, p) != 0) {
                    out.kodaira_type = "I" + std::to_string(m) + "*";
                    out.n = m;
                    out.conductor_exponent = n - m - 4;
                    out.tamagawa = count_roots_fp({mod_p(-a6t, p), a3t, 1}, p) > 0 ? 4 : 2;
                    return out;
                }
                mpz_class y0 = double_root_quadratic(1, a3t, mod_p(-a6t, p), p);
                E.shift(0, 0, my * y0);
                my *= p;
                ++m;
                // Quadratic in X: (a2/p) X^2 + (a4/(p*mx)) X + a6/(mx*my).
                mpz_class a2t = mod_p(E.a2 / p, p);
                mpz_class a4t = mod_p(E.a4 / (p * mx), p);
                a6t = mod_p(E.a6 / (mx * my), p);
                if (mod_p(a4t * a4t - 4 * a2t * a6t, p) != 0) {
                    out.kodaira_type = "I" + std::to_string(m) + "*";
                    out.n = m;
                    out.conductor_exponent = n - m - 4;
                    out.tamagawa = count_roots_fp({a6t, a4t, a2t}, p) > 0 ? 4 : 2;
                    return out;
                }
                mpz_class xr = double_root_quadratic(a2t, a4t, a6t, p);
                E.shift(mx * xr, 0, 0);
                mx *= p;
                ++m;
            }
        }

        // Triple root at 0: now p^2|a2, p^3|a4, p^4|a6.
        if (E.a2 % p2 != 0 || E.a4 % p3 != 0 || E.a6 % p4 != 0)
            throw std::logic_error("tate: triple-root entry conditions failed");
        // Quadratic Y^2 + (a3/p^2) Y - a6/p^4.
        mpz_class a3t = mod_p(E.a3 / p2, p), a6t = mod_p(E.a6 / p4, p);
        if (mod_p(a3t * a3t + 4 * a6t, p) != 0) {
            out.kodaira_type = "IV*";
            out.conductor_exponent = n - 6;
            out.tamagawa = count_roots_fp({mod_p(-a6t, p), a3t, 1}, p) > 0 ? 3 : 1;
            return out;
        }
        mpz_class y0 = double_root_quadratic(1, a3t, mod_p(-a6t, p), p);
        E.shift(0, 0, p2 * y0);
        // Now p^3 | a3 and p^5 | a6.
        if (E.a3 % p3 != 0 || E.a6 % (p4 * p) != 0)
            throw std::logic_error("tate: IV* exit conditions failed");
        if (E.a4 % p4 != 0) {
            out.kodaira_type = "III*";
            out.conductor_exponent = n - 7;
            out.tamagawa = 2;
            return out;
        }
        if (E.a6 % (p4 * p2) != 0) {
            out.kodaira_type = "II*";
            out.conductor_exponent = n - 8;
            out.tamagawa = 1;
            return out;
        }
        // Step 11: not minimal at p; rescale and restart.
        E.rescale(p);
        ++out.scaling_steps;
    }
}

// Conductor of an integral model: product of p^{f_p} over primes of the
// discriminant (of the possibly non-minimal model; tate_local minimalizes).
inline mpz_class conductor(const RationalCurve& curve) {
    mpz_class disc(mpq_class(curve.discriminant()).get_num());
    if (mpq_class(curve.discriminant()).get_den() != 1)
        throw std::invalid_argument("conductor: model not integral");
    mpz_class N = 1;
    for (const auto& [p, e] : factor_mpz(disc)) {
        LocalReductionData d = tate_local(curve, p);
        mpz_class pf;
        mpz_pow_ui(pf.get_mpz_t(), p.get_mpz_t(), d.conductor_exponent);
        N *= pf;
    }
    return N;
}

// All local data at bad primes of the (minimalized) model.
inline std::vector<LocalReductionData> local_data(const RationalCurve& curve) {
    mpz_class disc(mpq_class(curve.discriminant()).get_num());
    std::vector<LocalReductionData> out;
    for (const auto& [p, e] : factor_mpz(disc)) {
        LocalReductionData d = tate_local(curve, p);
        if (d.conductor_exponent > 0 || d.vdisc > 0) out.push_back(d);
    }
    return out;
}

// lcm of Tamagawa numbers times 12 (torsion bound): clears all finite
// contributions in height computations.
inline mpz_class height_clearing_multiple(const RationalCurve& curve) {
    mpz_class m = 12;
    for (const auto& d : local_data(curve)) m = mpz_class(lcm(m, mpz_class(d.tamagawa)));
    return m;
}

} // namespace sylv
