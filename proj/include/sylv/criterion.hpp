// The main decision procedure: build D(x) over F_p, decide root existence,
// build the point c, run the 9-divisibility chain, and scan prime ranges.
#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sylv/arith.hpp"
#include "sylv/curve.hpp"
#include "sylv/fppoly.hpp"

namespace sylv {

inline void require_criterion_class(const PrimeInput& prime, const char* who) {
    if (!prime.in_criterion_class())
        throw std::invalid_argument(std::string(who) + ": requires p = 8 (mod 9)");
}

// D(x) = x^9 - 24x^6 + 3x^3 + 1 - 9(cbrt(3) - 1) x^2 (x^3+1)^2 over F_p.
inline FpPoly build_D(const PrimeInput& prime) {
    require_criterion_class(prime, "build_D");
    std::uint64_t p = prime.p;
    std::uint64_t s = cube_root_of_3(prime).value();
    FpPoly base(p, {1, 0, 0, 3, 0, 0, p - 24 % p, 0, 0, 1});
    // 9(s-1) * (x^8 + 2x^5 + x^2)
    std::uint64_t k = mulmod_u64(9 % p, (s + p - 1) % p, p);
    FpPoly tail(p, {0, 0, k, 0, 0, mulmod_u64(2, k, p), 0, 0, k});
    return base - tail;
}

struct RootScan {
    bool has_root = false;
    int count_fp = 0;
    int count_fp2 = 0;  // asserted 0 or 9 (Prop 6.5 consequence)
    std::vector<std::uint64_t> witnesses;
};

// Root detection by gcd(D, x^p - x); witnesses by direct scan when cheap,
// full exhaustive evaluation as oracle for p <= 10^4.
inline RootScan d_root_scan(const PrimeInput& prime) {
    std::uint64_t p = prime.p;
    FpPoly D = build_D(prime);
    if (D.degree() != 9 || D.coeffs().back() != 1 || D.coeff(0) != 1)
        throw std::logic_error("d_root_scan: malformed D");
    FpPoly xp = FpPoly::powmod_x(mpz_class(static_cast<unsigned long>(p)), D);
    FpPoly g = FpPoly::gcd(xp - FpPoly::x(p), D);
    RootScan out;
    out.count_fp = g.degree();
    out.has_root = out.count_fp > 0;
    mpz_class p2 = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
    FpPoly xp2 = FpPoly::powmod_x(p2, D);
    out.count_fp2 = FpPoly::gcd(xp2 - FpPoly::x(p), D).degree();
    if (out.count_fp2 != 0 && out.count_fp2 != 9)
        throw std::logic_error("d_root_scan: F_p^2 root count is neither 0 nor 9");
    if (out.has_root && out.count_fp2 != 9)
        throw std::logic_error("d_root_scan: F_p root without full splitting over F_p^2");
    if (p <= 1000000) {
        for (std::uint64_t x = 0; x < p; ++x)
            if (D.eval(x) == 0) out.witnesses.push_back(x);
        if (static_cast<int>(out.witnesses.size()) != out.count_fp)
            throw std::logic_error("d_root_scan: gcd degree disagrees with exhaustive scan");
    }
    return out;
}

inline bool d_has_root(const PrimeInput& prime) { return d_root_scan(prime).has_root; }

inline WeierstrassModel<Fp2Elt> e1min_fp2(std::uint64_t p) {
    return curve_y2py_x3k(Fp2Elt::zero(p), "E1min/F_p2");
}

// c = a - b with a = (-1/cbrt3, (-3-sqrt(-3))/6), b = (-1, omega); checked
// against the closed form
// c = ( -(s^2+3s+1)/4, (sqrt(-3) s^2 + 3 sqrt(-3) s + 5 sqrt(-3) - 4)/8 ).
inline CurvePoint<Fp2Elt> point_c(const PrimeInput& prime) {
    require_criterion_class(prime, "point_c");
    std::uint64_t p = prime.p;
    auto E = e1min_fp2(p);
    Fp2Elt s = Fp2Elt::from_base(cube_root_of_3(prime));
    Fp2Elt w = Fp2Elt::omega(p);
    Fp2Elt r3 = Fp2Elt::sqrt_minus3(p);
    Fp2Elt one = Fp2Elt::one(p);
    Fp2Elt three = one + one + one;
    Fp2Elt four = three + one;
    Fp2Elt six = three + three;
    Fp2Elt eight = four + four;

    CurvePoint<Fp2Elt> a(-(one / s), (-three - r3) / six);
    CurvePoint<Fp2Elt> b(-one, w);
    if (!on_curve(a, E) || !on_curve(b, E))
        throw std::logic_error("point_c: a or b not on E^1_min");
    CurvePoint<Fp2Elt> c = sub(a, b, E);

    Fp2Elt cx = -(s * s + three * s + one) / four;
    Fp2Elt cy = (r3 * s * s + three * r3 * s + Fp2Elt::from_base(FpElt(5, p)) * r3 - four) / eight;
    CurvePoint<Fp2Elt> c_closed(cx, cy);
    if (c != c_closed)
        throw std::logic_error("point_c: a-b disagrees with the closed form");
    if (!on_curve(c, E)) throw std::logic_error("point_c: c not on E^1_min");
    return c;
}

// P1 = (cbrt3 - 1, -(cbrt3)^2 + 1): a sqrt(-3)-division of c, i.e.
// mul_sqrt_minus3(P1) = c. Asserted here.
inline CurvePoint<Fp2Elt> point_P1(const PrimeInput& prime) {
    require_criterion_class(prime, "point_P1");
    std::uint64_t p = prime.p;
    Fp2Elt s = Fp2Elt::from_base(cube_root_of_3(prime));
    Fp2Elt one = Fp2Elt::one(p);
    CurvePoint<Fp2Elt> P1(s - one, -(s * s) + one);
    if (!on_curve(P1, e1min_fp2(p))) throw std::logic_error("point_P1: not on curve");
    if (mul_sqrt_minus3(P1) != point_c(prime))
        throw std::logic_error("point_P1: [sqrt(-3)]P1 != c");
    return P1;
}

// The translate set {O, (0,0), (0,-1)} = ker[sqrt(-3)] of Prop 6.3.
inline bool in_sqrt3_kernel(const CurvePoint<Fp2Elt>& P, std::uint64_t p) {
    if (P.is_infinity()) return true;
    return P.x().is_zero() &&
           (P.y().is_zero() || P.y() == -Fp2Elt::one(p));
}

// All points of E^1_min(F_{p^2}), via a square table. Desk-scale: p <= ~200.
inline std::vector<CurvePoint<Fp2Elt>> enumerate_e1min_fp2(std::uint64_t p) {
    auto key = [p](const Fp2Elt& v) { return v.a().value() * p + v.b().value(); };
    std::unordered_map<std::uint64_t, Fp2Elt> sqrt_table;
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b) {
            Fp2Elt z(FpElt(a, p), FpElt(b, p));
            sqrt_table.emplace(key(z * z), z);
        }
    Fp2Elt one = Fp2Elt::one(p);
    Fp2Elt four = one + one + one + one;
    Fp2Elt inv2 = (one + one).inverse();
    std::vector<CurvePoint<Fp2Elt>> pts;
    pts.push_back(CurvePoint<Fp2Elt>::infinity());
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b) {
            Fp2Elt x(FpElt(a, p), FpElt(b, p));
            // y^2 + y = x^3  <=>  (2y+1)^2 = 4x^3 + 1
            Fp2Elt rhs = four * x * x * x + one;
            auto it = sqrt_table.find(key(rhs));
            if (it == sqrt_table.end()) continue;
            Fp2Elt r = it->second;
            Fp2Elt y1 = (r - one) * inv2;
            pts.emplace_back(x, y1);
            Fp2Elt y2 = (-r - one) * inv2;
            if (y2 != y1) pts.emplace_back(x, y2);
        }
    return pts;
}

// Prop 6.3 criterion: c divisible by 9 iff [(p+1)/9]c lands in ker[sqrt(-3)].
// For p <= oracle_max, additionally verified against the exhaustive oracle
// "exists d with [9]d = c".
inline bool nine_divisibility(const PrimeInput& prime, std::uint64_t oracle_max = 200) {
    require_criterion_class(prime, "nine_divisibility");
    std::uint64_t p = prime.p;
    auto E = e1min_fp2(p);
    CurvePoint<Fp2Elt> c = point_c(prime);
    mpz_class cof = mpz_class(static_cast<unsigned long>(p) + 1) / 9;
    bool criterion = in_sqrt3_kernel(scalar_mul(cof, c, E), p);
    if (p <= oracle_max) {
        bool oracle = false;
        for (const auto& d : enumerate_e1min_fp2(p))
            if (scalar_mul(9, d, E) == c) {
                oracle = true;
                break;
            }
        if (oracle != criterion)
            throw std::logic_error("nine_divisibility: Prop 6.3 criterion disagrees with oracle");
    }
    return criterion;
}

// In (Z/N)^2 (N = p+1), Q is divisible by m iff [N / gcd(m, N)] Q = O.
inline bool divisible_by(const mpz_class& m, const CurvePoint<Fp2Elt>& Q,
                         const WeierstrassModel<Fp2Elt>& E, std::uint64_t p) {
    mpz_class N(static_cast<unsigned long>(p) + 1);
    mpz_class cof = N / gcd(m, N);
    return scalar_mul(cof, Q, E).is_infinity();
}

// Prop 6.2 pair: (c divisible by 3^n sqrt(-3), c divisible by 3^{n+1}).
// p <= oracle_max: both solved over the enumerated group. Beyond: the first
// via the P1-lift (the sqrt(-3)-preimages of c are P1 + i(0,0)), the second
// via the cyclic-structure cofactor test.
inline std::pair<bool, bool> divisibility_ladder(const PrimeInput& prime, unsigned n,
                                                 std::uint64_t oracle_max = 200) {
    require_criterion_class(prime, "divisibility_ladder");
    std::uint64_t p = prime.p;
    auto E = e1min_fp2(p);
    CurvePoint<Fp2Elt> c = point_c(prime);
    mpz_class pow3n = 1, pow3n1 = 3;
    for (unsigned i = 0; i < n; ++i) {
        pow3n *= 3;
        pow3n1 *= 3;
    }

    bool first, second;
    if (p <= oracle_max) {
        first = second = false;
        for (const auto& d : enumerate_e1min_fp2(p)) {
            if (!first && scalar_mul(pow3n, mul_sqrt_minus3(d), E) == c) first = true;
            if (!second && scalar_mul(pow3n1, d, E) == c) second = true;
            if (first && second) break;
        }
    } else {
        CurvePoint<Fp2Elt> P1 = point_P1(prime);
        CurvePoint<Fp2Elt> t(Fp2Elt::zero(p), Fp2Elt::zero(p));
        first = false;
        CurvePoint<Fp2Elt> Q = P1;
        for (int i = 0; i < 3; ++i) {
            if (divisible_by(pow3n, Q, E, p)) first = true;
            Q = add(Q, t, E);
        }
        second = divisible_by(pow3n1, c, E, p);
    }
    return {first, second};
}

enum class Verdict { GuaranteedCubeSum, Inconclusive };

inline const char* verdict_name(Verdict v) {
    return v == Verdict::GuaranteedCubeSum ? "GuaranteedCubeSum" : "Inconclusive";
}

struct CriterionReport {
    std::uint64_t p = 0;
    FpElt cbrt3;
    bool d_has_root = false;
    int root_count_fp = 0;
    int root_count_fp2 = 0;
    std::vector<std::uint64_t> witnesses;
    CurvePoint<Fp2Elt> c;
    bool nine_divisible = false;
    Verdict verdict = Verdict::Inconclusive;
    double ms_root = 0, ms_divisibility = 0;
};

inline CriterionReport check_prime(const PrimeInput& prime, std::uint64_t oracle_max = 200) {
    require_criterion_class(prime, "check_prime");
    using clock = std::chrono::steady_clock;
    CriterionReport rep;
    rep.p = prime.p;
    rep.cbrt3 = cube_root_of_3(prime);

    auto t0 = clock::now();
    RootScan rs = d_root_scan(prime);
    auto t1 = clock::now();
    rep.d_has_root = rs.has_root;
    rep.root_count_fp = rs.count_fp;
    rep.root_count_fp2 = rs.count_fp2;
    rep.witnesses = std::move(rs.witnesses);

    rep.c = point_c(prime);
    rep.nine_divisible = nine_divisibility(prime, oracle_max);
    auto t2 = clock::now();
    rep.ms_root = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.ms_divisibility = std::chrono::duration<double, std::milli>(t2 - t1).count();

    // Prop 6.4: root existence and 9-divisibility are the same condition.
    if (rep.d_has_root != rep.nine_divisible)
        throw std::logic_error("check_prime: Prop 6.4 equivalence violated at p=" +
                               std::to_string(prime.p));
    rep.verdict = rep.d_has_root ? Verdict::Inconclusive : Verdict::GuaranteedCubeSum;
    return rep;
}

inline CriterionReport check_prime(std::uint64_t p, std::uint64_t oracle_max = 200) {
    return check_prime(PrimeInput::make(p), oracle_max);
}

struct ScanSummary {
    std::uint64_t lo = 0, hi = 0;
    std::uint64_t n_guaranteed = 0;
    std::uint64_t n_inconclusive = 0;
    std::vector<std::uint64_t> failures;  // equivalence violations (none expected)
    std::uint64_t total() const { return n_guaranteed + n_inconclusive; }
    mpq_class density_with_root() const {
        if (total() == 0) return 0;
        mpq_class d(static_cast<unsigned long>(n_inconclusive),
                    static_cast<unsigned long>(total()));
        d.canonicalize();
        return d;
    }
};

// Scan all primes = 8 (mod 9) in [lo, hi] across a worker pool. Reports are
// aggregated only as counts; callers wanting rows use check_prime per prime.
inline ScanSummary scan(std::uint64_t lo, std::uint64_t hi, unsigned workers = 1,
                        std::uint64_t oracle_max = 200,
                        const std::function<void(const CriterionReport&)>& row_sink = {}) {
    ScanSummary sum;
    sum.lo = lo;
    sum.hi = hi;
    std::vector<std::uint64_t> ps;
    for (std::uint64_t q : primes_in_range(lo, hi))
        if (q % 9 == 8) ps.push_back(q);
    if (workers == 0) workers = 1;

    std::vector<CriterionReport> reports(ps.size());
    std::vector<char> failed(ps.size(), 0);
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= ps.size()) return;
            try {
                reports[i] = check_prime(PrimeInput::make(ps[i]), oracle_max);
            } catch (const std::logic_error&) {
                failed[i] = 1;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    for (size_t i = 0; i < ps.size(); ++i) {
        if (failed[i]) {
            sum.failures.push_back(ps[i]);
            continue;
        }
        if (reports[i].verdict == Verdict::GuaranteedCubeSum)
            ++sum.n_guaranteed;
        else
            ++sum.n_inconclusive;
        if (row_sink) row_sink(reports[i]);
    }
    return sum;
}

} // namespace sylv
