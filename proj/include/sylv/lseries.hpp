// L-series of the cubic twists E^n: Frobenius traces by character-sum
// counting, functional-equation sign, central value L(1) and derivative
// L'(1), and the section-7.3 classification from the vanishing pattern of
// L(1, E^{9p^2}) and L(1, E^{9p}).
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sylv/arith.hpp"
#include "sylv/tate.hpp"

namespace sylv {

// Trace of Frobenius at a good prime ell by the quadratic-character sum
// a_ell = -sum_x chi2(x^3 + 16 n^2). CM by Q(omega) forces a_ell = 0 for
// ell = 2 (mod 3), which is returned without counting.
inline long a_ell_good(const mpz_class& n, long ell) {
    if (ell == 3 || n % ell == 0)
        throw std::invalid_argument("a_ell_good: bad-reduction prime");
    if (ell % 3 == 2) return 0;  // supersingular: ell inert in Q(omega); covers ell = 2
    if (ell < 7 || ell > 200000)
        throw std::invalid_argument("a_ell_good: counting cap is 7 <= ell <= 2*10^5");
    mpz_class k16 = mpz_class(16) * n * n;
    // The count on y^2 = x^3 + 16 n^2 matches the minimal model: the
    // substitution x = 4X, y = 8Y + 4 is invertible mod ell >= 5.
    long k = static_cast<long>(mpz_fdiv_ui(k16.get_mpz_t(), static_cast<unsigned long>(ell)));
    // chi[x] = Legendre symbol (x | ell) built from the square table.
    std::vector<signed char> chi(ell, -1);
    chi[0] = 0;
    for (long x = 1; x <= ell / 2; ++x) chi[(x * x) % ell] = 1;
    long s = 0;
    for (long x = 0; x < ell; ++x) s += chi[((x * x % ell) * x + k) % ell];
    return -s;
}

// a_ell at a bad prime from Tate data: 0 for additive reduction, +1 split
// multiplicative, -1 nonsplit.
inline int a_ell_bad(const RationalCurve& emin, long ell) {
    LocalReductionData d = tate_local(emin, mpz_class(ell));
    if (d.conductor_exponent == 0) throw std::logic_error("a_ell_bad: prime is good");
    if (d.conductor_exponent >= 2) return 0;
    return d.split_multiplicative ? 1 : -1;
}

// Dirichlet coefficients a_m of L(s, E^n) for m up to a bound, built by a
// smallest-prime-factor sieve from the prime values (multiplicativity and
// a_{l^k} = a_l a_{l^{k-1}} - l a_{l^{k-2}} at good l, a_l^k at bad l).
class LSeries {
public:
    explicit LSeries(const mpz_class& n, unsigned workers = 0, std::string cache_dir = "")
        : n_(n), min_(minimal_model(n)), cache_dir_(std::move(cache_dir)) {
        conductor_ = sylv::conductor(min_.model);
        for (const auto& d : local_data(min_.model))
            if (d.conductor_exponent > 0)
                bad_[d.prime.get_si()] =
                    d.conductor_exponent >= 2 ? 0 : (d.split_multiplicative ? 1 : -1);
        workers_ = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
        a_.assign(2, 0.0);
        a_[1] = 1.0;
    }

    const mpz_class& n() const { return n_; }
    const mpz_class& conductor() const { return conductor_; }
    const RationalCurve& minimal() const { return min_.model; }
    double sqrt_conductor() const { return std::sqrt(mpz_get_d(conductor_.get_mpz_t())); }

    // Ensure a_m is available for all m <= M.
    void extend(long M) {
        long have = static_cast<long>(a_.size()) - 1;
        if (M <= have) return;
        std::vector<long> spf(M + 1, 0);
        for (long i = 2; i <= M; ++i)
            if (spf[i] == 0)
                for (long j = i; j <= M; j += i)
                    if (spf[j] == 0) spf[j] = i;
        // Prime traces, parallel over the good primes.
        std::vector<long> primes;
        for (long i = 2; i <= M; ++i)
            if (spf[i] == i) primes.push_back(i);
        std::map<long, long> cached = load_cache();
        std::vector<double> ap(primes.size(), 0.0);
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= primes.size()) return;
                long p = primes[i];
                auto it = bad_.find(p);
                if (it != bad_.end()) {
                    ap[i] = it->second;
                    continue;
                }
                auto ct = cached.find(p);
                ap[i] = (ct != cached.end()) ? static_cast<double>(ct->second)
                                             : static_cast<double>(a_ell_good(n_, p));
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers_; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
        std::map<long, double> ap_of;
        for (std::size_t i = 0; i < primes.size(); ++i) ap_of[primes[i]] = ap[i];
        if (!cache_dir_.empty()) {
            for (std::size_t i = 0; i < primes.size(); ++i)
                if (!bad_.count(primes[i]))
                    cached[primes[i]] = static_cast<long>(ap[i]);
            store_cache(cached);
        }

        a_.resize(M + 1, 0.0);
        for (long m = std::max<long>(2, have + 1); m <= M; ++m) {
            long p = spf[m];
            long cof = m, pe = 1;
            while (cof % p == 0) {
                cof /= p;
                pe *= p;
            }
            if (cof > 1) {
                a_[m] = a_[pe] * a_[cof];
            } else if (pe == p) {
                a_[m] = ap_of[p];
            } else if (bad_.count(p)) {
                a_[m] = ap_of[p] * a_[pe / p];
            } else {
                a_[m] = ap_of[p] * a_[pe / p] - static_cast<double>(p) * a_[pe / (p * p)];
            }
        }
    }

    double a(long m) const { return a_[m]; }
    long terms() const { return static_cast<long>(a_.size()) - 1; }

    // theta(t) = sum_m a_m exp(-2 pi m t / sqrt(N)), over m <= M.
    double theta(double t, long M) const {
        double c = 2.0 * 3.14159265358979323846 / sqrt_conductor();
        double s = 0.0;
        for (long m = M; m >= 1; --m) s += a_[m] * std::exp(-c * t * m);
        return s;
    }

private:
    // Trace cache on disk: one CSV per twist, rows "n,ell,a_ell" (good primes
    // only; bad-prime values are recomputed from Tate data, which is cheap).
    std::string cache_path() const { return cache_dir_ + "/aell_" + n_.get_str() + ".csv"; }

    std::map<long, long> load_cache() const {
        std::map<long, long> out;
        if (cache_dir_.empty()) return out;
        std::ifstream in(cache_path());
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string nf, ellf, af;
            if (!std::getline(row, nf, ',') || !std::getline(row, ellf, ',') ||
                !std::getline(row, af, ','))
                continue;
            if (nf != n_.get_str()) continue;
            out[std::stol(ellf)] = std::stol(af);
        }
        return out;
    }

    void store_cache(const std::map<long, long>& traces) const {
        std::ofstream out(cache_path(), std::ios::trunc);
        if (!out) return;  // cache is best-effort
        for (const auto& [ell, a] : traces)
            out << n_.get_str() << ',' << ell << ',' << a << '\n';
    }

    mpz_class n_;
    MinimalModelResult min_;
    mpz_class conductor_;
    std::map<long, int> bad_;
    std::vector<double> a_;
    unsigned workers_;
    std::string cache_dir_;
};

// Exponential integral E1(x) for x > 0: Taylor-with-log series for small x,
// modified-Lentz continued fraction for large x.
inline double exp_integral_e1(double x) {
    if (x <= 0) throw std::invalid_argument("exp_integral_e1: need x > 0");
    if (x <= 3.0) {
        const double euler_gamma = 0.57721566490153286060651209;
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 80; ++k) {
            term *= -x / k;
            sum += -term / k;
            if (std::fabs(term / k) < 1e-18) break;
        }
        return -euler_gamma - std::log(x) + sum;
    }
    // E1(x) = e^{-x} * 1/(x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))).
    const double tiny = 1e-300;
    double b = x + 1.0, C = 1.0 / tiny, D = 1.0 / b, f = D;
    for (int i = 1; i < 200; ++i) {
        double an = -static_cast<double>(i) * i;
        b += 2.0;
        D = an * D + b;
        if (std::fabs(D) < tiny) D = tiny;
        C = b + an / C;
        if (std::fabs(C) < tiny) C = tiny;
        D = 1.0 / D;
        double delta = C * D;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return f * std::exp(-x);
}

struct LReport {
    std::string label;
    mpz_class conductor;
    int eps = 0;               // functional-equation sign
    double l_value = 0.0;      // L(1)
    bool has_derivative = false;
    double l_derivative = 0.0;  // L'(1), present only when eps = -1
    long terms = 0;
    double tail_bound = 0.0;
    double scale = 0.0;  // positive majorant sum_m |a_m/m| e^{-2 pi m / sqrt N}
};

namespace detail {

// Term count for a tail bound <= err with weight e^{-c m t}, using the
// conservative majorant |a_m / m| <= 2.
inline long lseries_terms(double c, double t, double err) {
    double denom = -std::expm1(-c * t);
    long M = static_cast<long>(std::ceil(std::log(2.0 / (err * denom)) / (c * t))) + 16;
    if (M > 5000000) throw std::runtime_error("lseries_terms: term cap exceeded");
    return M;
}

} // namespace detail

// Sign of the functional equation from theta(1/t) = eps * t^2 * theta(t).
inline int functional_sign(const LSeries& L, long M, double t = 1.2) {
    for (int attempt = 0; attempt < 3; ++attempt, t += 0.15) {
        double g = L.theta(t, M);
        double gi = L.theta(1.0 / t, M);
        if (std::fabs(g) < 1e-12 * (std::fabs(gi) + 1.0)) continue;  // near a zero of theta
        double r = gi / (t * t * g);
        if (std::fabs(r - 1.0) < 0.1) return 1;
        if (std::fabs(r + 1.0) < 0.1) return -1;
    }
    throw std::runtime_error("functional_sign: ratio did not resolve to +-1");
}

// L(1, E^n) and, when eps = -1, L'(1, E^n):
//   L(1)  = (1 + eps) sum_m (a_m/m) e^{-2 pi m / sqrt N},
//   L'(1) = 2 sum_m (a_m/m) E1(2 pi m / sqrt N).
inline LReport l_value(const mpz_class& n, int order = 0, double target_error = 1e-6,
                       unsigned workers = 0, const std::string& cache_dir = "") {
    if (order != 0 && order != 1) throw std::invalid_argument("l_value: order must be 0 or 1");
    LSeries L(n, workers, cache_dir);
    double c = 2.0 * 3.14159265358979323846 / L.sqrt_conductor();
    long M = detail::lseries_terms(c, 1.0 / 1.5, target_error);  // covers the sign probe too
    L.extend(M);

    LReport rep;
    rep.label = "E^" + n.get_str();
    rep.conductor = L.conductor();
    rep.terms = M;
    rep.tail_bound = 2.0 * std::exp(-c * M) / -std::expm1(-c);
    rep.eps = functional_sign(L, M);
    double s = 0.0, sabs = 0.0;
    for (long m = M; m >= 1; --m) {
        double term = L.a(m) / m * std::exp(-c * m);
        s += term;
        sabs += std::fabs(term);
    }
    rep.l_value = (1 + rep.eps) * s;
    rep.scale = sabs;
    if (order == 1) {
        if (rep.eps != -1)
            throw std::invalid_argument("l_value: derivative requested but eps = +1");
        double d = 0.0;
        for (long m = M; m >= 1; --m) d += L.a(m) / m * exp_integral_e1(c * m);
        rep.l_derivative = 2.0 * d;
        rep.has_derivative = true;
    }
    return rep;
}

// Section 7.3 classification from the vanishing pattern, conjectural
// (BSD-conditional): L(1,E^{9p^2}) != 0 means z1 is nontorsion and yields a
// rational point on E^p; L(1,E^{9p}) != 0 likewise for z2 and E^{p^2}.
enum class ClassifyResult { POnly, PSquaredOnly, Both, Neither };

struct ClassifyReport {
    ClassifyResult result = ClassifyResult::Neither;
    bool ambiguous = false;  // a value sat inside the threshold decision band
    double ratio_9p2 = 0.0;  // |L(1,E^{9p^2})| / scale
    double ratio_9p = 0.0;
    int eps_9p2 = 0, eps_9p = 0;
    std::string label = "conjectural (BSD-conditional)";
};

inline ClassifyReport classify(std::uint64_t p, double zero_threshold = 1e-3,
                               unsigned workers = 0) {
    PrimeInput prime = PrimeInput::make(p);
    if (!prime.in_criterion_class())
        throw std::invalid_argument("classify: need p = 8 (mod 9)");
    mpz_class P(static_cast<unsigned long>(p));
    LReport a = l_value(mpz_class(9 * P * P), 0, zero_threshold / 10, workers);
    LReport b = l_value(mpz_class(9 * P), 0, zero_threshold / 10, workers);
    ClassifyReport rep;
    rep.eps_9p2 = a.eps;
    rep.eps_9p = b.eps;
    rep.ratio_9p2 = a.scale > 0 ? std::fabs(a.l_value) / a.scale : 0.0;
    rep.ratio_9p = b.scale > 0 ? std::fabs(b.l_value) / b.scale : 0.0;
    bool z1 = rep.ratio_9p2 >= zero_threshold;  // L(1,E^{9p^2}) nonzero -> z1 nontorsion
    bool z2 = rep.ratio_9p >= zero_threshold;
    rep.result = z1 ? (z2 ? ClassifyResult::Both : ClassifyResult::POnly)
                    : (z2 ? ClassifyResult::PSquaredOnly : ClassifyResult::Neither);
    // Never claim a silent zero: flag anything inside a decade of the
    // threshold, and always flag Neither.
    auto in_band = [&](double r) { return r >= zero_threshold / 10 && r < zero_threshold * 10; };
    rep.ambiguous = in_band(rep.ratio_9p2) || in_band(rep.ratio_9p) ||
                    rep.result == ClassifyResult::Neither;
    return rep;
}

inline std::string classify_name(ClassifyResult r) {
    switch (r) {
        case ClassifyResult::POnly: return "POnly";
        case ClassifyResult::PSquaredOnly: return "PSquaredOnly";
        case ClassifyResult::Both: return "Both";
        default: return "Neither";
    }
}

} // namespace sylv
