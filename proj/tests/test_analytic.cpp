#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sylv/forms.hpp"
#include "sylv/moduli.hpp"
#include "sylv/parameval.hpp"
#include "sylv/period.hpp"

using namespace sylv;

namespace {
const mpfr_prec_t kBits = 192;

double cdist(const BigComplex& a, const BigComplex& b) { return abs(a - b).to_double(); }
} // namespace

TEST_CASE("eta: closed form at i and both transformation laws") {
    BigComplex i(0.0, 1.0, kBits);
    BigComplex ei = eval_eta(i, kBits);
    // eta(i) = Gamma(1/4) / (2 pi^{3/4}) ~ 0.76822537.
    BigFloat g14 = gamma(BigFloat(mpq_class(1, 4), kBits));
    BigFloat pi = BigFloat::pi(kBits);
    BigFloat expect = g14 / (BigFloat(2L, kBits) *
                             exp(log(pi) * BigFloat(mpq_class(3, 4), kBits)));
    CHECK(abs(ei.re() - expect).to_double() < 1e-40);
    CHECK(abs(ei.im()).to_double() < 1e-40);
    CHECK(ei.re().to_double() == doctest::Approx(0.76822537).epsilon(1e-7));

    // eta(tau + 1) = e^{i pi / 12} eta(tau) and eta(-1/tau) = sqrt(-i tau) eta(tau)
    // at a handful of generic points.
    const double pts[][2] = {{0.37, 0.41}, {-1.21, 0.09}, {0.0, 2.7}, {2.5, 0.33}};
    for (auto& p : pts) {
        BigComplex tau(p[0], p[1], kBits);
        BigFloat ph = BigFloat::pi(kBits) / BigFloat(12L, kBits);
        BigComplex lhs = eval_eta(tau + BigComplex(1.0, 0.0, kBits), kBits);
        BigComplex rhs = BigComplex(cos(ph), sin(ph)) * eval_eta(tau, kBits);
        CHECK(cdist(lhs, rhs) < 1e-40);
        BigComplex minus_one(BigFloat(-1L, kBits), BigFloat(0L, kBits));
        BigComplex lhs2 = eval_eta(minus_one / tau, kBits);
        BigComplex rhs2 = sqrt(BigComplex(tau.im(), -tau.re())) * eval_eta(tau, kBits);
        CHECK(cdist(lhs2, rhs2) < 1e-38);
    }
    CHECK_THROWS_AS(eval_eta(BigComplex(0.5, -1.0, kBits), kBits), std::invalid_argument);
}

TEST_CASE("j: CM anchors and agreement of the two evaluation routes") {
    CHECK(cdist(eval_j(BigComplex(0.0, 1.0, kBits), kBits),
                BigComplex(1728.0, 0.0, kBits)) < 1e-40);
    CHECK(cdist(eval_j(BigComplex(0.0, 2.0, kBits), kBits),
                BigComplex(287496.0, 0.0, kBits)) < 1e-38);
    BigComplex s3(BigFloat(0L, kBits), sqrt(BigFloat(3L, kBits)));
    CHECK(cdist(eval_j(s3, kBits), BigComplex(54000.0, 0.0, kBits)) < 1e-38);
    CHECK(abs(eval_j(omega_numeric(kBits), kBits)).to_double() < 1e-38);
    // Series route vs eta route (Delta = eta^24, E4 from the eta identity),
    // plus SL2(Z) invariance, at generic points.
    const double pts[][2] = {{0.123, 0.9}, {-0.4, 1.7}, {0.45, 0.6}, {0.02, 1.1},
                             {0.25, 2.2},  {-0.11, 0.77}, {0.31, 1.9}, {0.5, 0.95},
                             {-0.37, 1.3}, {0.19, 0.58}};
    for (auto& p : pts) {
        BigComplex tau(p[0], p[1], kBits);
        BigComplex a = eval_j(tau, kBits);
        BigComplex b = eval_j_eta(tau, kBits);
        CHECK(cdist(a, b) / (abs(a).to_double() + 1.0) < 1e-30);
        BigComplex shifted = eval_j(tau + BigComplex(3.0, 0.0, kBits), kBits);
        CHECK(cdist(a, shifted) / (abs(a).to_double() + 1.0) < 1e-30);
    }
}

TEST_CASE("reduced forms: anchors and reduction invariants") {
    auto f12 = reduced_forms(mpz_class(-12));
    REQUIRE(f12.size() == 1);
    CHECK(f12[0] == ReducedForm{1, 0, 3});
    auto f3 = reduced_forms(mpz_class(-3));
    REQUIRE(f3.size() == 1);
    CHECK(f3[0] == ReducedForm{1, 1, 1});
    auto f867 = reduced_forms(mpz_class(-867));  // -3 * 17^2
    CHECK(f867.size() == 6);
    for (const auto& f : f867) {
        CHECK(f.disc() == -867);
        CHECK(abs(f.b) <= f.a);
        CHECK(f.a <= f.c);
        if (abs(f.b) == f.a || f.a == f.c) CHECK(f.b >= 0);
        CHECK(gcd(gcd(f.a, f.b), f.c) == 1);
    }
    CHECK_THROWS_AS(reduced_forms(mpz_class(12)), std::invalid_argument);
    CHECK_THROWS_AS(reduced_forms(mpz_class(-5)), std::invalid_argument);
}

TEST_CASE("singular moduli norm test at p = 17") {
    ModuliReport rep = singular_moduli_norm_test(17);
    CHECK(rep.class_number == 6);
    CHECK(rep.divisible);
    CHECK(rep.rounding_gap < 1e-5);
    // 486000^6 | N and N != 0.
    mpz_class m = 1;
    for (int i = 0; i < 6; ++i) m *= 486000;
    CHECK(rep.N % m == 0);
    CHECK(rep.N != 0);
    CHECK_THROWS_AS(singular_moduli_norm_test(5), std::invalid_argument);
    CHECK_THROWS_AS(singular_moduli_norm_test(18), std::invalid_argument);
}

TEST_CASE("real period: AGM vs direct integration, lattice invariants, scaling") {
    // E^3_min : y^2 + y = x^3 + 2.
    MinimalModelResult m3 = minimal_model(3);
    BigFloat agm = real_period(m3.model, kBits);
    BigFloat direct = real_period_integration(m3.model);
    CHECK(abs(agm - direct).to_double() < 1e-10);
    // Omega^3 = 2 int_{e1}^{inf} dx / sqrt(4x^3 + 9).
    CHECK(agm.to_double() == doctest::Approx(3.6747566856453969).epsilon(1e-14));
    // Lattice basis {Omega, Omega(3 + sqrt(-3))/6} reproduces g2 = 0, g3 = -b6.
    LatticeCheck lc = lattice_invariants_check(m3.model);
    CHECK(lc.g2_error < 1e-8);
    CHECK(lc.g3_error < 1e-8);
    // Omega^n = 2 Omega_{E^n}: the minimal-model period is twice the period of
    // the non-minimal model y^2 = x^3 + 16 n^2 (x = 4X, y = 8Y + 4).
    RationalCurve En = curve_En(5);
    BigFloat omega_En = real_period(En, kBits);
    BigFloat omega_n = period_of_twist(5, kBits);
    CHECK(abs(omega_n - BigFloat(2L, kBits) * omega_En).to_double() < 1e-30);
}

TEST_CASE("period relation (Prop 7.2) at p = 17 and 53; degenerate guard") {
    auto r17 = verify_period_relation(17);
    CHECK(r17.pass);
    CHECK(r17.residual_1 < 1e-8);
    CHECK(r17.residual_2 < 1e-8);
    auto r53 = verify_period_relation(53);
    CHECK(r53.pass);
    CHECK_THROWS_AS(period_of_twist(8, kBits), std::invalid_argument);  // 8 = 2^3 not cube-free
}

TEST_CASE("period relation residual scales with precision (no systematic offset)") {
    auto coarse = verify_period_relation(17, 96);
    auto fine = verify_period_relation(17, 320);
    CHECK(fine.residual_1 <= coarse.residual_1 + 1e-25);
    CHECK(fine.residual_1 < 1e-25);
}

TEST_CASE("modular parametrization at the CM anchors") {
    // psi(omega/(9(2 omega + 1))) = (4 sqrt(-3) cbrt(3) omega^2, 24 omega - 12)
    // under the fixed embedding omega = e^{2 pi i / 3}, sqrt(-3) = 2 omega + 1.
    BigFloat s3 = sqrt(BigFloat(3L, kBits));
    BigComplex tau(BigFloat(1L, kBits) / BigFloat(18L, kBits), s3 / BigFloat(54L, kBits));
    ParamPoint P = eval_param(tau, kBits);
    BigComplex w = omega_numeric(kBits);
    BigComplex one(BigFloat(1L, kBits), BigFloat(0L, kBits));
    BigComplex sm3 = w + w + one;
    BigComplex xe = sm3 * w * w * BigFloat(4L, kBits) * cbrt(BigFloat(3L, kBits));
    BigComplex ye = w * BigFloat(24L, kBits) - BigComplex(BigFloat(12L, kBits), BigFloat(0L, kBits));
    CHECK(cdist(P.x, xe) < 1e-10);
    CHECK(cdist(P.y, ye) < 1e-10);

    // f(omega/(2 omega + 1)): the modular equation forces f^3 = -27 here; the
    // realized primitive root is -3 omega (= -3 omega^2 under the conjugate
    // identification of omega used for some displayed values).
    BigComplex tf(BigFloat(mpq_class(1, 2), kBits), s3 / BigFloat(6L, kBits));
    BigComplex fv = eval_f(tf, kBits);
    CHECK(abs(pow_ui(fv, 3) + BigComplex(BigFloat(27L, kBits), BigFloat(0L, kBits))).to_double() <
          1e-10);
    CHECK(cdist(fv, BigComplex(BigFloat(-3L, kBits), BigFloat(0L, kBits)) * w) < 1e-10);
}

TEST_CASE("parametrization lands on the curve at generic points") {
    const double pts[][2] = {{0.3123, 0.22}, {-0.17, 0.4}, {0.05, 0.09}, {0.44, 1.3},
                             {0.9, 0.31},    {-0.66, 0.12}, {0.21, 0.75}, {0.13, 0.05},
                             {0.55, 0.18},   {-0.08, 0.27}, {0.71, 0.09}, {0.33, 0.5},
                             {0.02, 0.8},    {-0.29, 0.15}, {0.61, 0.24}, {0.18, 0.11},
                             {0.83, 0.36},   {-0.45, 0.52}, {0.07, 0.19}, {0.39, 0.06}};
    for (auto& p : pts) {
        BigComplex tau(p[0], p[1], kBits);
        ParamPoint P = eval_param(tau, kBits);  // internally asserts the identity
        BigComplex resid = P.y * P.y - P.x * P.x * P.x -
                           BigComplex(BigFloat(144L, kBits), BigFloat(0L, kBits));
        double scale = abs(P.y * P.y).to_double() + 1.0;
        CHECK(abs(resid).to_double() / scale < 1e-28);
    }
}
