#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sylv/criterion.hpp"

using namespace sylv;

namespace {
std::vector<PrimeInput> class_primes(std::uint64_t lo, std::uint64_t hi) {
    std::vector<PrimeInput> out;
    for (auto p : primes_in_range(lo, hi))
        if (p % 9 == 8) out.push_back(PrimeInput::make(p));
    return out;
}
} // namespace

TEST_CASE("build_D shape and anchor values") {
    auto p17 = PrimeInput::make(17);
    FpPoly D = build_D(p17);
    CHECK(D.degree() == 9);
    CHECK(D.coeffs().back() == 1);  // monic
    CHECK(D.coeff(0) == 1);         // D(0) = 1
    CHECK(D.eval(1) == 3);          // 1 - 24 + 3 + 1 - 36*(7-1) = 3 (mod 17)
    for (const auto& prime : class_primes(8, 500)) {
        FpPoly Dp = build_D(prime);
        CHECK(Dp.degree() == 9);
        CHECK(Dp.coeffs().back() == 1);
        CHECK(Dp.coeff(0) == 1);
    }
    CHECK_THROWS_AS(build_D(PrimeInput::make(5)), std::invalid_argument);
}

TEST_CASE("d_has_root anchors and fixtures") {
    CHECK(!d_has_root(PrimeInput::make(17)));  // the paper's worked example
    CHECK(!d_has_root(PrimeInput::make(53)));  // regression fixture
    // Smallest p = 8 (mod 9) whose D has a root: 89 (below 300).
    std::uint64_t smallest = 0;
    for (const auto& prime : class_primes(8, 300)) {
        if (d_has_root(prime)) {
            smallest = prime.p;
            break;
        }
    }
    CHECK(smallest == 89);
    auto rs = d_root_scan(PrimeInput::make(89));
    CHECK(rs.count_fp == 3);
    CHECK(rs.count_fp2 == 9);
    FpPoly D89 = build_D(PrimeInput::make(89));
    CHECK(rs.witnesses.size() == 3);
    for (auto w : rs.witnesses) CHECK(D89.eval(w) == 0);
}

TEST_CASE("gcd root detection matches exhaustive evaluation up to 10^4") {
    for (const auto& prime : class_primes(8, 10000)) {
        auto rs = d_root_scan(prime);  // internally cross-checks witness scan
        FpPoly D = build_D(prime);
        int brute = 0;
        for (std::uint64_t x = 0; x < prime.p; ++x)
            if (D.eval(x) == 0) ++brute;
        CHECK(rs.count_fp == brute);
        CHECK(rs.has_root == (brute > 0));
        CHECK((rs.count_fp2 == 0 || rs.count_fp2 == 9));
    }
}

TEST_CASE("point c anchors") {
    auto p17 = PrimeInput::make(17);
    auto c = point_c(p17);  // internally asserts a-b == closed form, on-curve
    CHECK(c.x() == Fp2Elt(FpElt(12, 17), FpElt(0, 17)));
    CHECK(c.y() == Fp2Elt(FpElt(11, 17), FpElt(6, 17)));
    // c is not 3-torsion.
    for (std::uint64_t p : {17ull, 53ull, 71ull}) {
        auto prime = PrimeInput::make(p);
        auto E = e1min_fp2(p);
        CHECK(!scalar_mul(3, point_c(prime), E).is_infinity());
    }
    // [sqrt(-3)]P1 = c, and the same holds for the (0,0)-translates of P1.
    for (const auto& prime : class_primes(8, 300)) {
        auto P1 = point_P1(prime);  // internally asserts the equality
        auto E = e1min_fp2(prime.p);
        CurvePoint<Fp2Elt> t(Fp2Elt::zero(prime.p), Fp2Elt::zero(prime.p));
        auto cc = point_c(prime);
        CHECK(mul_sqrt_minus3(add(P1, t, E)) == cc);
        CHECK(mul_sqrt_minus3(add(add(P1, t, E), t, E)) == cc);
    }
}

TEST_CASE("nine_divisibility: anchors, oracle agreement, 3-divisibility") {
    CHECK(!nine_divisibility(PrimeInput::make(17)));
    CHECK(nine_divisibility(PrimeInput::make(89)));
    // For p <= 200 nine_divisibility internally runs the exhaustive oracle.
    for (const auto& prime : class_primes(8, 200)) {
        CHECK_NOTHROW(nine_divisibility(prime));
        auto E = e1min_fp2(prime.p);
        auto c = point_c(prime);
        // c and (0,0) are always divisible by 3.
        bool c_div3 = false, t_div3 = false;
        CurvePoint<Fp2Elt> t(Fp2Elt::zero(prime.p), Fp2Elt::zero(prime.p));
        for (const auto& d : enumerate_e1min_fp2(prime.p)) {
            if (scalar_mul(3, d, E) == c) c_div3 = true;
            if (scalar_mul(3, d, E) == t) t_div3 = true;
        }
        CHECK(c_div3);
        CHECK(t_div3);
    }
    // Beyond the oracle cap the cofactor criterion still gives 3-divisibility.
    for (std::uint64_t p : {233ull, 269ull, 359ull}) {
        auto prime = PrimeInput::make(p);
        auto E = e1min_fp2(p);
        CHECK(divisible_by(3, point_c(prime), E, p));
    }
}

TEST_CASE("divisibility ladder (Prop 6.2)") {
    auto l0 = divisibility_ladder(PrimeInput::make(17), 0);
    CHECK(l0.first);
    CHECK(l0.second);
    auto l1 = divisibility_ladder(PrimeInput::make(17), 1);
    CHECK(!l1.first);
    CHECK(!l1.second);
    // Equivalence of the two components for all class primes <= 200 (n=0,1),
    // decided by the exhaustive oracle.
    for (const auto& prime : class_primes(8, 200)) {
        for (unsigned n = 0; n <= 1; ++n) {
            auto [a, b] = divisibility_ladder(prime, n);
            CHECK(a == b);
        }
        // n=1 component must match nine_divisibility.
        CHECK(divisibility_ladder(prime, 1).second == nine_divisibility(prime));
    }
    // Algebraic path (p > 200) agrees with the small-p pattern at 89's twin.
    auto big = divisibility_ladder(PrimeInput::make(269), 1);
    CHECK(big.first == big.second);
    CHECK(big.second == nine_divisibility(PrimeInput::make(269)));
}

TEST_CASE("check_prime and the Prop 6.4 equivalence") {
    auto rep = check_prime(PrimeInput::make(17));
    CHECK(rep.verdict == Verdict::GuaranteedCubeSum);
    CHECK(!rep.d_has_root);
    CHECK(!rep.nine_divisible);
    CHECK(rep.cbrt3.value() == 7);
    auto rep89 = check_prime(PrimeInput::make(89));
    CHECK(rep89.verdict == Verdict::Inconclusive);
    CHECK(rep89.d_has_root);
    CHECK(rep89.nine_divisible);
    // check_prime itself throws if d_has_root != nine_divisible; sweep a range.
    for (const auto& prime : class_primes(8, 2000))
        CHECK_NOTHROW(check_prime(prime));
    CHECK_THROWS_AS(check_prime(PrimeInput::make(7)), std::invalid_argument);
}

TEST_CASE("scan: counts, density, empty range, worker independence") {
    ScanSummary s = scan(8, 3000, 2);
    CHECK(s.failures.empty());
    CHECK(s.n_guaranteed == 49);
    CHECK(s.n_inconclusive == 22);
    CHECK(s.density_with_root() == mpq_class(22, 71));
    // Same result single-threaded (merge is order-independent).
    ScanSummary s1 = scan(8, 3000, 1);
    CHECK(s1.n_guaranteed == s.n_guaranteed);
    CHECK(s1.n_inconclusive == s.n_inconclusive);
    // Total = number of class primes in range.
    std::uint64_t expected = class_primes(8, 3000).size();
    CHECK(s.total() == expected);
    // Empty range.
    ScanSummary e = scan(20, 22, 2);
    CHECK(e.total() == 0);
    CHECK(e.density_with_root() == 0);
    // Row sink sees every prime exactly once.
    std::vector<std::uint64_t> rows;
    scan(8, 500, 3, 200, [&](const CriterionReport& r) { rows.push_back(r.p); });
    CHECK(rows.size() == class_primes(8, 500).size());
}
