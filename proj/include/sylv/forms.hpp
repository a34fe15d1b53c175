// Primitive reduced binary quadratic forms of negative discriminant.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace sylv {

struct ReducedForm {
    mpz_class a, b, c;
    mpz_class disc() const { return b * b - 4 * a * c; }
    bool operator==(const ReducedForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

// All primitive reduced forms (a, b, c) of discriminant D < 0:
// |b| <= a <= c, b >= 0 if |b| = a or a = c, gcd(a, b, c) = 1.
// Returned sorted by (a, b) for a deterministic reduction order downstream.
inline std::vector<ReducedForm> reduced_forms(const mpz_class& D) {
    if (D >= 0) throw std::invalid_argument("reduced_forms: D must be negative");
    mpz_class r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) throw std::invalid_argument("reduced_forms: D must be 0 or 1 mod 4");
    std::vector<ReducedForm> out;
    mpz_class limit;  // |b| <= sqrt(|D|/3)
    mpz_class absD = -D;
    mpz_sqrt(limit.get_mpz_t(), mpz_class(absD / 3).get_mpz_t());
    for (mpz_class b = (D % 2 == 0) ? 0 : 1; b <= limit + 1; b += 2) {
        mpz_class n4 = b * b - D;
        if (n4 % 4 != 0) continue;
        mpz_class n = n4 / 4;  // n = a*c
        for (mpz_class a = (b > 0 ? b : mpz_class(1)); a * a <= n; ++a) {
            if (a == 0 || n % a != 0) continue;
            mpz_class c = n / a;
            if (c < a) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            out.push_back(ReducedForm{a, b, c});
            // (a, -b, c) is reduced too unless b = 0, |b| = a, or a = c.
            if (b > 0 && b != a && a != c) out.push_back(ReducedForm{a, -b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](const ReducedForm& x, const ReducedForm& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

inline std::size_t class_number(const mpz_class& D) { return reduced_forms(D).size(); }

} // namespace sylv
