// Singular-moduli norm test: N = prod over reduced forms of disc -3p^2 of
// (j(tau_i) - 54000), rounded to an integer and checked for divisibility by
// (2^4 3^5 5^3)^h = 486000^h.
#pragma once

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sylv/arith.hpp"
#include "sylv/eta.hpp"
#include "sylv/forms.hpp"

namespace sylv {

struct ModuliReport {
    mpz_class N;                 // the rounded class-group product
    bool divisible = false;      // 486000^h | N
    std::size_t class_number = 0;
    long digits_used = 0;        // decimal digits of the final working precision
    int escalations = 0;         // precision doublings that were needed
    double rounding_gap = 0.0;   // |N_float - N| at the final precision
};

// j(tau) - 54000 for the root tau = (-b + sqrt(D)) / (2a) of a reduced form.
inline BigComplex singular_modulus_term(const ReducedForm& form, const mpz_class& absD,
                                        mpfr_prec_t bits) {
    BigFloat sqrt_absD = sqrt(BigFloat(absD, bits));
    BigFloat two_a = BigFloat(mpz_class(2 * form.a), bits);
    BigComplex tau(BigFloat(mpz_class(-form.b), bits) / two_a, sqrt_absD / two_a);
    BigComplex j = eval_j(tau, bits);
    return j - BigComplex(BigFloat(54000L, bits), BigFloat(0L, bits));
}

// The full norm test for a class prime p = 8 (mod 9). Precision is auto-sized
// to pi*sqrt(3 p^2)/ln 10 + 40 decimal digits (the dominant a=1 form) and
// doubled on rounding-gap failures, with bounded retries.
inline ModuliReport singular_moduli_norm_test(std::uint64_t p, long digits = 0,
                                              unsigned workers = 0) {
    PrimeInput prime = PrimeInput::make(p);  // validates primality
    if (!prime.in_criterion_class())
        throw std::invalid_argument("singular_moduli_norm_test: need p = 8 (mod 9)");
    mpz_class D = mpz_class(-3) * mpz_class(static_cast<unsigned long>(p)) *
                  mpz_class(static_cast<unsigned long>(p));
    std::vector<ReducedForm> forms = reduced_forms(D);
    std::size_t h = forms.size();
    if (digits <= 0) {
        double pd = 3.141592653589793 * std::sqrt(3.0) * static_cast<double>(p) /
                    std::log(10.0);
        digits = static_cast<long>(pd) + 40;
    }
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    mpz_class modulus = 1;
    for (std::size_t i = 0; i < h; ++i) modulus *= 486000;

    ModuliReport rep;
    rep.class_number = h;
    const int max_retries = 5;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        mpfr_prec_t bits = static_cast<mpfr_prec_t>(static_cast<double>(digits) * 3.3220) + 64;
        // Warm the shared j-coefficient table once before going parallel.
        (void)eval_j(BigComplex(0.0, 2.0, bits), bits);
        mpz_class absD = -D;
        std::vector<BigComplex> terms(h, BigComplex(bits));
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        unsigned n_workers = std::min<unsigned>(workers, static_cast<unsigned>(h));
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= h) return;
                    terms[i] = singular_modulus_term(forms[i], absD, bits);
                }
            });
        }
        for (auto& t : pool) t.join();
        // Deterministic reduction order: multiply in the sorted-form order.
        BigComplex prod(BigFloat(1L, bits), BigFloat(0L, bits));
        for (const auto& t : terms) prod *= t;

        mpz_class N = prod.re().round_to_integer();
        BigFloat gap = abs(prod.re() - BigFloat(N, bits));
        BigFloat imag = abs(prod.im());
        BigFloat tol(1e-5, bits);
        rep.digits_used = digits;
        rep.escalations = attempt;
        rep.rounding_gap = gap.to_double();
        if (gap < tol && imag < tol) {
            rep.N = N;
            rep.divisible = (N % modulus == 0);
            return rep;
        }
        digits *= 2;
    }
    throw std::runtime_error(
        "singular_moduli_norm_test: rounding gap did not close within retry budget");
}

} // namespace sylv
