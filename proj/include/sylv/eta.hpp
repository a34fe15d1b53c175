// Arbitrary-precision evaluation of eta, j and the level-3 Hauptmodul f on the
// upper half plane, with SL2(Z) reduction to the fundamental domain.
#pragma once

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "sylv/bigfloat.hpp"
#include "sylv/qseries.hpp"

namespace sylv {

constexpr long kEtaGuardBits = 48;

inline void require_upper_half(const BigComplex& tau) {
    if (!(tau.im().sign() > 0)) throw std::invalid_argument("tau must have Im > 0");
}

// Move tau into the SL2(Z) fundamental domain by alternating T and S steps.
// If mult is non-null it accumulates the eta multiplier: eta(input) =
// (*mult) * eta(reduced). Every step uses an exact transformation law
// (eta(tau+1) = e^{i pi/12} eta(tau), eta(-1/tau) = sqrt(-i tau) eta(tau)),
// so no Dedekind-sum bookkeeping is needed.
inline BigComplex fd_reduce(BigComplex tau, BigComplex* mult = nullptr) {
    require_upper_half(tau);
    mpfr_prec_t prec = tau.prec();
    BigFloat one(1L, prec);
    BigFloat pi = BigFloat::pi(prec);
    if (mult) *mult = BigComplex(one, BigFloat(0L, prec));
    for (int iter = 0; iter < 4096; ++iter) {
        // T-step: shift Re(tau) into [-1/2, 1/2].
        mpz_class n = tau.re().round_to_integer();
        if (n != 0) {
            BigFloat nf(n, prec);
            tau = BigComplex(tau.re() - nf, tau.im());
            if (mult) {
                // eta(tau + n) = e^{i pi n / 12} eta(tau).
                BigFloat phase = pi * nf / BigFloat(12L, prec);
                *mult *= BigComplex(cos(phase), sin(phase));
            }
        }
        BigFloat norm = tau.re() * tau.re() + tau.im() * tau.im();
        if (norm >= one) return tau;
        // S-step: eta(tau) = eta(-1/tau) / sqrt(-i tau).
        if (mult) {
            BigComplex mi_tau(tau.im(), -tau.re());  // -i * tau
            *mult = *mult / sqrt(mi_tau);
        }
        BigComplex minus_one(BigFloat(-1L, prec), BigFloat(0L, prec));
        tau = minus_one / tau;
    }
    throw std::runtime_error("fd_reduce: reduction did not terminate");
}

// eta(tau) to roughly `bits` bits (guard bits added internally).
inline BigComplex eval_eta(const BigComplex& tau_in, mpfr_prec_t bits) {
    require_upper_half(tau_in);
    mpfr_prec_t prec = bits + kEtaGuardBits;
    BigComplex tau(tau_in.re() + BigFloat(0L, prec), tau_in.im() + BigFloat(0L, prec));
    BigComplex mult(prec);
    tau = fd_reduce(tau, &mult);
    BigFloat pi = BigFloat::pi(prec);
    BigFloat two_pi = pi * BigFloat(2L, prec);
    // q = e^{2 pi i tau}; in the fundamental domain |q| <= e^{-pi sqrt(3)}.
    BigComplex q = exp(BigComplex(-two_pi * tau.im(), two_pi * tau.re()));
    // Pentagonal-number sum: sum_{k in Z} (-1)^k q^{k(3k-1)/2}.
    BigFloat qabs = abs(q);
    BigFloat tol = BigFloat::pow2(-static_cast<long>(prec), prec);
    BigComplex sum(BigFloat(1L, prec), BigFloat(0L, prec));
    for (long k = 1;; ++k) {
        long e1 = k * (3 * k - 1) / 2;
        long e2 = k * (3 * k + 1) / 2;
        BigComplex t1 = pow_ui(q, static_cast<unsigned long>(e1));
        BigComplex t2 = pow_ui(q, static_cast<unsigned long>(e2));
        BigComplex term = t1 + t2;
        if (k % 2 == 1)
            sum -= term;
        else
            sum += term;
        if (pow_ui(qabs, static_cast<unsigned long>(e1)) < tol) break;
        if (k > 10000) throw std::runtime_error("eval_eta: q-sum did not converge");
    }
    // q^{1/24} = e^{i pi tau / 12}.
    BigFloat s = pi / BigFloat(12L, prec);
    BigComplex q24 = exp(BigComplex(-s * tau.im(), s * tau.re()));
    return mult * q24 * sum;
}

namespace detail {
// Shared table of j-expansion coefficients (j = q^{-1} sum c_i q^i).
inline const std::vector<mpq_class>& j_coeff_table(long n) {
    static std::mutex mu;
    static std::vector<mpq_class> table;
    std::scoped_lock lock(mu);
    if (static_cast<long>(table.size()) <= n) {
        QSeries j = j_series(n + 8);
        table.clear();
        table.reserve(j.truncation() + 1);
        for (long i = 0; i <= j.truncation(); ++i) table.push_back(j.coeff_index(i));
    }
    return table;
}
} // namespace detail

// j(tau) via SL2(Z) reduction followed by the exact q-expansion. In the
// fundamental domain |q| <= e^{-pi sqrt(3)} and |c_n| < e^{4 pi sqrt(n)}, so
// the number of needed terms grows linearly with the requested bits.
inline BigComplex eval_j(const BigComplex& tau_in, mpfr_prec_t bits) {
    require_upper_half(tau_in);
    mpfr_prec_t prec = bits + kEtaGuardBits;
    BigComplex tau(tau_in.re() + BigFloat(0L, prec), tau_in.im() + BigFloat(0L, prec));
    tau = fd_reduce(tau);
    // Terms needed: 4*pi*sqrt(n) - pi*sqrt(3)*n < -(prec+8)*ln 2.
    double target = (static_cast<double>(prec) + 8.0) * 0.6931471805599453;
    long n_terms = 16;
    while (4.0 * 3.141592653589793 * std::sqrt(static_cast<double>(n_terms)) -
               3.141592653589793 * 1.7320508075688772 * static_cast<double>(n_terms) >
           -target)
        ++n_terms;
    const std::vector<mpq_class>& c = detail::j_coeff_table(n_terms + 1);
    BigFloat two_pi = BigFloat::pi(prec) * BigFloat(2L, prec);
    BigComplex q = exp(BigComplex(-two_pi * tau.im(), two_pi * tau.re()));
    // Horner in q over the tabulated coefficients, then divide once by q.
    BigComplex acc(prec);
    for (long i = n_terms; i >= 0; --i) {
        acc = acc * q + BigComplex(BigFloat(c[static_cast<std::size_t>(i)], prec), BigFloat(0L, prec));
    }
    return acc / q;
}

// Independent j evaluation through eta: Delta = eta(tau)^24 and
// E4 = eta(tau)^16/eta(2tau)^8 + 256 eta(2tau)^16/eta(tau)^8, j = E4^3/Delta.
inline BigComplex eval_j_eta(const BigComplex& tau, mpfr_prec_t bits) {
    mpfr_prec_t prec = bits + kEtaGuardBits;
    BigComplex e1 = eval_eta(tau, prec);
    BigComplex e2 = eval_eta(tau + tau, prec);
    BigComplex a = pow_ui(e1, 16) / pow_ui(e2, 8);
    BigComplex b = BigComplex(BigFloat(256L, prec), BigFloat(0L, prec)) * pow_ui(e2, 16) / pow_ui(e1, 8);
    BigComplex e4 = a + b;
    BigComplex delta = pow_ui(e1, 24);
    return pow_ui(e4, 3) / delta;
}

// f(tau) = eta(tau)^4 / eta(3 tau)^4.
inline BigComplex eval_f(const BigComplex& tau, mpfr_prec_t bits) {
    mpfr_prec_t prec = bits + kEtaGuardBits;
    BigComplex three_tau = tau + tau + tau;
    return pow_ui(eval_eta(tau, prec), 4) / pow_ui(eval_eta(three_tau, prec), 4);
}

} // namespace sylv
