// Exact rational q-expansions: eta quotients, j, theta, Eisenstein G, the
// modular parametrization series, and the identity verifiers built on them.
#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sylv/arith.hpp"

namespace sylv {

inline constexpr long kQSeriesCap = 100000;

// q^e * sum_{i=0..N} a_i q^i with exact rational e and a_i. N is the
// truncation order: coefficients of exponents e..e+N are reliable.
class QSeries {
public:
    QSeries() : prefix_(0), c_{mpq_class(0)} {}
    QSeries(mpq_class prefix, std::vector<mpq_class> coeffs)
        : prefix_(std::move(prefix)), c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("QSeries: empty coefficient list");
        if (static_cast<long>(c_.size()) - 1 > kQSeriesCap)
            throw std::length_error("QSeries: truncation above cap");
    }
    static QSeries constant(const mpq_class& v, long N) {
        std::vector<mpq_class> c(N + 1, mpq_class(0));
        c[0] = v;
        return QSeries(0, std::move(c));
    }

    const mpq_class& prefix() const { return prefix_; }
    long truncation() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    // Highest exponent with a reliable coefficient.
    mpq_class last_exponent() const { return prefix_ + truncation(); }

    const mpq_class& coeff_index(long i) const {
        if (i < 0 || i > truncation()) throw std::out_of_range("QSeries: index out of range");
        return c_[i];
    }
    // Coefficient of q^e; e must lie on the prefix lattice and inside range.
    mpq_class coeff_at(const mpq_class& e) const {
        mpq_class d = e - prefix_;
        if (d.get_den() != 1) return 0;
        mpz_class i(d.get_num());
        if (i < 0) return 0;
        if (i > truncation()) throw std::out_of_range("QSeries: exponent beyond truncation");
        return c_[i.get_si()];
    }

    // Strip leading zero coefficients into the prefix.
    QSeries normalized() const {
        size_t k = 0;
        while (k < c_.size() && c_[k] == 0) ++k;
        if (k == c_.size()) throw std::domain_error("QSeries: normalizing the zero series");
        return QSeries(prefix_ + static_cast<long>(k),
                       std::vector<mpq_class>(c_.begin() + k, c_.end()));
    }

    QSeries operator-() const {
        std::vector<mpq_class> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return QSeries(prefix_, std::move(r));
    }

    QSeries operator+(const QSeries& o) const {
        mpq_class d = prefix_ - o.prefix_;
        if (d.get_den() != 1)
            throw std::invalid_argument("QSeries: incompatible prefixes in addition");
        // Rebase both to the smaller prefix.
        const QSeries& lo = (d <= 0) ? *this : o;
        const QSeries& hi = (d <= 0) ? o : *this;
        mpz_class shift_z(mpq_class(hi.prefix_ - lo.prefix_).get_num());
        long shift = static_cast<long>(shift_z.get_si());
        // Reliable through exponent min(lo.last, hi.last).
        mpq_class last = std::min(lo.last_exponent(), hi.last_exponent());
        mpz_class n_z(mpq_class(last - lo.prefix_).get_num());
        long n = static_cast<long>(n_z.get_si());
        if (n < 0) throw std::invalid_argument("QSeries: addition has empty overlap");
        std::vector<mpq_class> r(n + 1, mpq_class(0));
        for (long i = 0; i <= n; ++i) {
            if (i <= lo.truncation()) r[i] += lo.c_[i];
            long j = i - shift;
            if (j >= 0 && j <= hi.truncation()) r[i] += hi.c_[j];
        }
        return QSeries(lo.prefix_, std::move(r));
    }
    QSeries operator-(const QSeries& o) const { return *this + (-o); }

    QSeries operator*(const QSeries& o) const {
        long n = std::min(truncation(), o.truncation());
        std::vector<mpq_class> r(n + 1, mpq_class(0));
        for (long i = 0; i <= n; ++i) {
            if (c_[i] == 0) continue;
            for (long j = 0; i + j <= n; ++j) {
                if (o.c_[j] == 0) continue;
                r[i + j] += c_[i] * o.c_[j];
            }
        }
        return QSeries(prefix_ + o.prefix_, std::move(r));
    }

    QSeries scale(const mpq_class& v) const {
        std::vector<mpq_class> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * v;
        return QSeries(prefix_, std::move(r));
    }

    QSeries pow(unsigned k) const {
        QSeries acc = QSeries::constant(1, truncation());
        for (unsigned i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    // Multiplicative inverse; leading coefficient must be nonzero after
    // normalization. Verified by re-multiplication.
    QSeries inverse() const {
        QSeries a = normalized();
        long n = a.truncation();
        std::vector<mpq_class> b(n + 1, mpq_class(0));
        b[0] = 1 / a.c_[0];
        for (long m = 1; m <= n; ++m) {
            mpq_class s = 0;
            for (long k = 1; k <= m; ++k) s += a.c_[k] * b[m - k];
            b[m] = -s / a.c_[0];
        }
        QSeries inv(-a.prefix_, std::move(b));
        QSeries check = inv * a;
        for (long i = 0; i <= check.truncation(); ++i)
            if (check.coeff_index(i) != (i == 0 ? 1 : 0))
                throw std::logic_error("QSeries: inverse verification failed");
        return inv;
    }

    QSeries operator/(const QSeries& o) const { return *this * o.inverse(); }

    // Formal cube root on the rational branch: requires prefix divisible by 3
    // and leading coefficient a nonzero rational cube. Verified by re-cubing.
    QSeries cube_root() const {
        QSeries a = normalized();
        mpq_class e3 = a.prefix_ / 3;
        mpq_class lead = a.c_[0];
        mpz_class num(lead.get_num()), den(lead.get_den());
        mpz_class rn, rd;
        bool neg = num < 0;
        mpz_class an = neg ? mpz_class(-num) : num;
        if (!mpz_root(rn.get_mpz_t(), an.get_mpz_t(), 3) ||
            !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), 3))
            throw std::domain_error("QSeries: leading coefficient is not a rational cube");
        mpq_class r(neg ? mpz_class(-rn) : rn, rd);
        r.canonicalize();

        long n = a.truncation();
        std::vector<mpq_class> b(n + 1, mpq_class(0)), u(n + 1, mpq_class(0));
        b[0] = r;
        u[0] = r * r;
        mpq_class inv3b2 = 1 / (3 * b[0] * b[0]);
        for (long m = 1; m <= n; ++m) {
            mpq_class ku = 0;  // sum_{i=1..m-1} b_i b_{m-i}
            for (long i = 1; i < m; ++i) ku += b[i] * b[m - i];
            mpq_class ka = 0;  // sum_{i=1..m-1} b_i u_{m-i}
            for (long i = 1; i < m; ++i) ka += b[i] * u[m - i];
            b[m] = (a.c_[m] - b[0] * ku - ka) * inv3b2;
            u[m] = 2 * b[0] * b[m] + ku;
        }
        QSeries root(e3, std::move(b));
        QSeries cube = root * root * root;
        for (long i = 0; i <= cube.truncation(); ++i)
            if (cube.coeff_index(i) != a.c_[i])
                throw std::logic_error("QSeries: cube root verification failed");
        return root;
    }

    // q -> q^m: exponent dilation.
    QSeries substitute(long m) const {
        if (m < 1) throw std::invalid_argument("QSeries: substitution scale must be >= 1");
        long n = truncation() * m;
        if (n > kQSeriesCap) throw std::length_error("QSeries: substitution exceeds cap");
        std::vector<mpq_class> r(n + 1, mpq_class(0));
        for (long i = 0; i <= truncation(); ++i) r[i * m] = c_[i];
        return QSeries(prefix_ * m, std::move(r));
    }

    // Equality of all reliable coefficients up to exponent `through`
    // (inclusive); both series must cover that range on a common lattice.
    static bool agree_through(const QSeries& A, const QSeries& B, const mpq_class& through,
                              long* first_mismatch = nullptr) {
        mpq_class d = A.prefix_ - B.prefix_;
        if (d.get_den() != 1) return false;
        if (A.last_exponent() < through || B.last_exponent() < through)
            throw std::invalid_argument("QSeries: comparison beyond truncation");
        mpq_class lo = std::min(A.prefix_, B.prefix_);
        for (mpq_class e = lo; e <= through; e += 1) {
            mpq_class ca = (e < A.prefix_) ? mpq_class(0) : A.coeff_at(e);
            mpq_class cb = (e < B.prefix_) ? mpq_class(0) : B.coeff_at(e);
            if (ca != cb) {
                if (first_mismatch) {
                    mpz_class idx(mpq_class(e - lo).get_num());
                    *first_mismatch = static_cast<long>(idx.get_si());
                }
                return false;
            }
        }
        return true;
    }

private:
    mpq_class prefix_;
    std::vector<mpq_class> c_;
};

// Euler product prod_{n>=1} (1 - q^{mn}) to order N via pentagonal numbers.
inline QSeries euler_product(long m, long N) {
    if (m < 1 || N < 0 || N > kQSeriesCap) throw std::invalid_argument("euler_product: bad args");
    std::vector<mpq_class> c(N + 1, mpq_class(0));
    c[0] = 1;
    for (long k = 1;; ++k) {
        long e1 = m * (k * (3 * k - 1) / 2);
        long e2 = m * (k * (3 * k + 1) / 2);
        if (e1 > N && e2 > N) break;
        int sign = (k % 2 == 0) ? 1 : -1;
        if (e1 <= N) c[e1] += sign;
        if (e2 <= N) c[e2] += sign;
    }
    return QSeries(0, std::move(c));
}

// eta(m tau) = q^{m/24} prod (1 - q^{mn}).
inline QSeries eta_series(long m, long N) {
    QSeries e = euler_product(m, N);
    return QSeries(mpq_class(m, 24), e.coeffs());
}

// prod_i eta(m_i tau)^{k_i}; prefix sum k_i m_i / 24.
inline QSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, long N) {
    QSeries acc = QSeries::constant(1, N);
    for (const auto& [m, k] : factors) {
        QSeries e = eta_series(m, N);
        QSeries e_use = (k < 0) ? e.inverse() : e;
        for (long i = 0; i < (k < 0 ? -k : k); ++i) acc = acc * e_use;
    }
    return acc;
}

// f(tau) = eta(tau)^4 / eta(3 tau)^4, prefix -1/3.
inline QSeries f_series(long N) { return eta_quotient({{1, 4}, {3, -4}}, N); }

// Delta = eta^24, prefix 1, a_0 = 1.
inline QSeries delta_series(long N) { return eta_quotient({{1, 24}}, N); }

// E4 = 1 + 240 sum sigma_3(n) q^n.
inline QSeries e4_series(long N) {
    std::vector<mpq_class> c(N + 1, mpq_class(0));
    c[0] = 1;
    for (long n = 1; n <= N; ++n) c[n] = 240 * mpq_class(sigma3(n));
    return QSeries(0, std::move(c));
}

// E6 = 1 - 504 sum sigma_5(n) q^n.
inline QSeries e6_series(long N) {
    std::vector<mpq_class> c(N + 1, mpq_class(0));
    c[0] = 1;
    for (long n = 1; n <= N; ++n) c[n] = -504 * mpq_class(sigma5(n));
    return QSeries(0, std::move(c));
}

// j = E4^3 / Delta = q^{-1} + 744 + 196884 q + ...
inline QSeries j_series(long N) {
    QSeries e4 = e4_series(N);
    return (e4 * e4 * e4) / delta_series(N);
}

// theta_L = sum_{(a,b)} q^{a^2+ab+b^2} by direct lattice enumeration, and
// G = G2(z) - 3 G2(3z) with G2 = -1/24 + sum sigma(n) q^n.
inline std::pair<QSeries, QSeries> theta_and_G(long N) {
    std::vector<mpq_class> th(N + 1, mpq_class(0));
    long bound = 2;
    while (bound * bound < 4 * N / 3 + 4) ++bound;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b) {
            long n = a * a + a * b + b * b;
            if (n >= 0 && n <= N) th[n] += 1;
        }
    std::vector<mpq_class> g(N + 1, mpq_class(0));
    g[0] = mpq_class(1, 12);  // -1/24 + 3/24
    for (long n = 1; n <= N; ++n) {
        g[n] = mpq_class(sigma(n));
        if (n % 3 == 0) g[n] -= 3 * mpq_class(sigma(n / 3));
    }
    return {QSeries(0, std::move(th)), QSeries(0, std::move(g))};
}

// theta_L^2 = 12 G, coefficient-wise to q^N.
inline bool verify_theta_identity(long N, long* first_mismatch = nullptr) {
    if (N < 10) throw std::invalid_argument("verify_theta_identity: N >= 10 required");
    auto [th, G] = theta_and_G(N);
    return QSeries::agree_through(th * th, G.scale(12), N, first_mismatch);
}

// (f^3 + 27)(f^3 + 3)^3 = j(3 tau) f^3, to q^N (leading exponent -4).
inline bool verify_modular_equation(long N, long* first_mismatch = nullptr) {
    if (N < 20) throw std::invalid_argument("verify_modular_equation: N >= 20 required");
    long M = N + 4;  // margin so both sides cover exponent N from -4
    QSeries f = f_series(M + 1);
    QSeries f3 = f * f * f;
    QSeries c27 = QSeries::constant(27, f3.truncation());
    QSeries c3 = QSeries::constant(3, f3.truncation());
    QSeries lhs = (f3 + c27) * (f3 + c3) * (f3 + c3) * (f3 + c3);
    QSeries j3 = j_series((M + 3) / 3 + 2).substitute(3);
    QSeries rhs = j3 * f3;
    return QSeries::agree_through(lhs, rhs, N, first_mismatch);
}

// Prop 4.2 divisor-character sums: for odd prime p,
//   odd  = 2 sum_{0<x<p, x odd}  R(p^2 - x^2)
//   even = 2 sum_{0<x<p, x even} R(p^2 - x^2),
// compared with (p -+ 1)/3 resp. p+1 / p-3 according to p mod 3.
struct SumkronResult {
    std::int64_t odd_sum = 0, even_sum = 0;
    std::int64_t odd_expected = 0, even_expected = 0;
    bool pass = false;
};

inline SumkronResult verify_sumkron(std::uint64_t p) {
    if (p < 5 || !is_prime_u64(p)) throw std::invalid_argument("verify_sumkron: need prime >= 5");
    SumkronResult res;
    for (std::uint64_t x = 1; x < p; ++x) {
        std::uint64_t n = p * p - x * x;
        std::int64_t R = six_R(n) / 6;
        if (x % 2 == 1)
            res.odd_sum += 2 * R;
        else
            res.even_sum += 2 * R;
    }
    if (p % 3 == 2) {
        res.odd_expected = static_cast<std::int64_t>((p + 1) / 3);
        res.even_expected = static_cast<std::int64_t>(p + 1);
    } else {
        res.odd_expected = static_cast<std::int64_t>((p - 1) / 3);
        res.even_expected = static_cast<std::int64_t>(p - 3);
    }
    res.pass = res.odd_sum == res.odd_expected && res.even_sum == res.even_expected;
    return res;
}

// Eq (3.1): y = -8 eta(9t)^4/eta(27t)^4 - 12 (prefix -3), and x the rational
// formal cube root of y^2 - 144 with leading term 4 q^{-2}; y^2 = x^3 + 144
// on E^3 : y^2 = x^3 + 144 is asserted, as is x^3 = 64 f9 (f9 + 3).
inline std::pair<QSeries, QSeries> param_series(long N) {
    if (N < 30) throw std::invalid_argument("param_series: N >= 30 required");
    QSeries f9 = eta_quotient({{9, 4}, {27, -4}}, N + 7);
    QSeries y = f9.scale(-8) - QSeries::constant(12, f9.truncation());
    QSeries y2 = y * y;
    QSeries x3 = y2 - QSeries::constant(144, y2.truncation());
    QSeries x = x3.cube_root();
    if (x.normalized().prefix() != -2 || x.normalized().coeffs()[0] != 4)
        throw std::logic_error("param_series: x does not lead with 4 q^{-2}");
    QSeries xxx = x * x * x;
    QSeries rhs = xxx + QSeries::constant(144, xxx.truncation());
    if (!QSeries::agree_through(y2, rhs, std::min(y2.last_exponent(), rhs.last_exponent())))
        throw std::logic_error("param_series: curve identity failed");
    QSeries alt = (f9 * (f9 + QSeries::constant(3, f9.truncation()))).scale(64);
    if (!QSeries::agree_through(xxx, alt, std::min(alt.last_exponent(), xxx.last_exponent())))
        throw std::logic_error("param_series: x^3 = 64 f9 (f9+3) failed");
    return {y, x};
}

// --- cache file format -------------------------------------------------
// line 1: "qseries 1 <prefix_num> <prefix_den> <N>"
// then N+1 lines: "<numerator> <denominator>".

inline void write_qseries(std::ostream& os, const QSeries& s) {
    os << "qseries 1 " << s.prefix().get_num() << ' ' << s.prefix().get_den() << ' '
       << s.truncation() << '\n';
    for (const auto& c : s.coeffs()) os << c.get_num() << ' ' << c.get_den() << '\n';
}

inline QSeries read_qseries(std::istream& is) {
    std::string tag;
    int version = 0;
    std::string pn, pd;
    long N = -1;
    if (!(is >> tag >> version >> pn >> pd >> N) || tag != "qseries" || version != 1 || N < 0)
        throw std::runtime_error("read_qseries: bad header");
    mpq_class prefix{mpz_class(pn), mpz_class(pd)};
    prefix.canonicalize();
    std::vector<mpq_class> c(N + 1);
    for (long i = 0; i <= N; ++i) {
        std::string n, d;
        if (!(is >> n >> d)) throw std::runtime_error("read_qseries: truncated payload");
        c[i] = mpq_class{mpz_class(n), mpz_class(d)};
        c[i].canonicalize();
    }
    return QSeries(prefix, std::move(c));
}

} // namespace sylv
