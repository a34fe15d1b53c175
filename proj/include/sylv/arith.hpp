// Exact arithmetic substrate: Kronecker symbol (-3/.), divisor sums,
// lattice representation counts, and the canonical cube root of 3 mod p.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sylv/fp.hpp"
#include "sylv/primality.hpp"

namespace sylv {

// Validated prime input. Criterion-level operations additionally require
// p = 8 (mod 9); field towers only need p = 2 (mod 3).
struct PrimeInput {
    std::uint64_t p;
    unsigned residue_class;  // p mod 9

    static PrimeInput make(std::uint64_t p) {
        if (!is_prime_u64(p)) throw std::invalid_argument("PrimeInput: not a prime");
        return PrimeInput{p, static_cast<unsigned>(p % 9)};
    }
    bool in_criterion_class() const { return residue_class == 8; }
};

// Kronecker symbol (-3/r). Completely multiplicative; reduces to the
// quadratic character mod 3: 0 on multiples of 3, +1 on r=1 (3), -1 on r=2 (3).
inline int kronecker_minus3(std::uint64_t r) {
    if (r == 0) throw std::invalid_argument("kronecker_minus3: r must be positive");
    switch (r % 3) {
        case 0: return 0;
        case 1: return 1;
        default: return -1;
    }
}

// Sum of positive divisors.
inline std::uint64_t sigma(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("sigma: n must be positive");
    std::uint64_t total = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            total += d;
            if (d != n / d) total += n / d;
        }
    }
    return total;
}

// Sum of cubes of positive divisors (E4 coefficients).
inline mpz_class sigma3(std::uint64_t n) {
    mpz_class total = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            mpz_class a(static_cast<unsigned long>(d)), b(static_cast<unsigned long>(n / d));
            total += a * a * a;
            if (d != n / d) total += b * b * b;
        }
    }
    return total;
}

// Sum of fifth powers of positive divisors (E6 coefficients).
inline mpz_class sigma5(std::uint64_t n) {
    mpz_class total = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            mpz_class a(static_cast<unsigned long>(d)), b(static_cast<unsigned long>(n / d));
            total += a * a * a * a * a;
            if (d != n / d) total += b * b * b * b * b;
        }
    }
    return total;
}

// 6*R(n) where R(n) = sum_{0<d|n} (-3/d) for n>0 and R(0) = 1/6.
inline std::int64_t six_R(std::uint64_t n) {
    if (n == 0) return 1;
    std::int64_t total = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            total += kronecker_minus3(d);
            if (d != n / d) total += kronecker_minus3(n / d);
        }
    }
    return 6 * total;
}

// R(n) together with the number r of (a,b) in Z^2 with a^2+ab+b^2 = n,
// counted by direct enumeration. The identity r = 6R holds for all n >= 0.
inline std::pair<mpq_class, std::uint64_t> hex_rep_numbers(std::uint64_t n) {
    mpq_class R(static_cast<long>(six_R(n)), 6);
    R.canonicalize();
    std::uint64_t count = 0;
    // a^2+ab+b^2 = ((2a+b)^2 + 3b^2)/4, so |a|,|b| <= 2 sqrt(n/3).
    std::int64_t bound = 2;
    while (static_cast<std::uint64_t>(bound) * bound < 4 * n / 3 + 4) ++bound;
    for (std::int64_t a = -bound; a <= bound; ++a) {
        for (std::int64_t b = -bound; b <= bound; ++b) {
            std::int64_t q = a * a + a * b + b * b;
            if (q >= 0 && static_cast<std::uint64_t>(q) == n) ++count;
        }
    }
    return {R, count};
}

// The unique x in F_p with x^3 = 3, p = 2 (mod 3). Cubing is a bijection on
// F_p^x, inverted by the exponent (2p-1)/3; the result is re-cubed to check.
inline FpElt cube_root_of_3(const PrimeInput& prime) {
    std::uint64_t p = prime.p;
    if (p % 3 != 2) throw std::invalid_argument("cube_root_of_3: requires p = 2 (mod 3)");
    FpElt three = FpElt::from_int(3, p);
    FpElt root = three.pow((2 * p - 1) / 3);
    if (root * root * root != three) throw std::logic_error("cube_root_of_3: verification failed");
    return root;
}

// Cube root of an arbitrary element of F_p, p = 2 (mod 3).
inline FpElt cube_root(const FpElt& a) {
    std::uint64_t p = a.modulus();
    if (p % 3 != 2) throw std::invalid_argument("cube_root: requires p = 2 (mod 3)");
    FpElt root = a.pow((2 * p - 1) / 3);
    if (root * root * root != a) throw std::logic_error("cube_root: verification failed");
    return root;
}

// Primes in [lo, hi], by Miller-Rabin on the fly.
inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo < 2 ? 2 : lo; n <= hi && n >= lo; ++n) {
        if (is_prime_u64(n)) out.push_back(n);
    }
    return out;
}

} // namespace sylv
