#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sylv/curve.hpp"
#include "sylv/minmodel.hpp"
#include "sylv/tate.hpp"

using namespace sylv;

namespace {

// All affine points of y^2 + y = x^3 over F_{p^2}, by direct scan.
std::vector<CurvePoint<Fp2Elt>> e1min_points_fp2(std::uint64_t p) {
    std::vector<CurvePoint<Fp2Elt>> pts;
    for (std::uint64_t xa = 0; xa < p; ++xa)
        for (std::uint64_t xb = 0; xb < p; ++xb)
            for (std::uint64_t ya = 0; ya < p; ++ya)
                for (std::uint64_t yb = 0; yb < p; ++yb) {
                    Fp2Elt x(FpElt(xa, p), FpElt(xb, p));
                    Fp2Elt y(FpElt(ya, p), FpElt(yb, p));
                    if (y * y + y == x * x * x) pts.emplace_back(x, y);
                }
    return pts;
}

} // namespace

TEST_CASE("group law on E^1_min over F_{p^2}") {
    std::uint64_t p = 5;
    auto E = curve_y2py_x3k(Fp2Elt::zero(p), "E1min");
    auto pts = e1min_points_fp2(p);
    // #E(F_{p^2}) = (p+1)^2 for supersingular p = 2 (mod 3).
    CHECK(pts.size() + 1 == (p + 1) * (p + 1));
    // Closure, commutativity, associativity on a sample.
    for (size_t i = 0; i < pts.size(); i += 3) {
        for (size_t j = 0; j < pts.size(); j += 5) {
            auto S = add(pts[i], pts[j], E, true);
            CHECK(on_curve(S, E));
            CHECK(S == add(pts[j], pts[i], E));
        }
    }
    for (size_t i = 0; i < pts.size(); i += 7)
        for (size_t j = 0; j < pts.size(); j += 9)
            for (size_t k = 0; k < pts.size(); k += 11)
                CHECK(add(add(pts[i], pts[j], E), pts[k], E) ==
                      add(pts[i], add(pts[j], pts[k], E), E));
    // Identity, inverse, group exponent (Z/(p+1))^2.
    for (const auto& P : pts) {
        CHECK(add(P, CurvePoint<Fp2Elt>::infinity(), E) == P);
        CHECK(add(P, neg(P, E), E).is_infinity());
        CHECK(scalar_mul(static_cast<long>(p + 1), P, E).is_infinity());
    }
}

TEST_CASE("E^1_min(F_p) has exactly p+1 points") {
    for (std::uint64_t p : {5ull, 17ull, 53ull, 89ull}) {
        auto E = curve_y2py_x3k(FpElt(0, p), "E1min");
        std::uint64_t count = 1;
        for (std::uint64_t x = 0; x < p; ++x)
            for (std::uint64_t y = 0; y < p; ++y)
                if (FpElt(y, p) * FpElt(y, p) + FpElt(y, p) ==
                    FpElt(x, p) * FpElt(x, p) * FpElt(x, p))
                    ++count;
        CHECK(count == p + 1);
    }
}

TEST_CASE("torsion identities: b = (-1, omega)") {
    std::uint64_t p = 17;
    auto E = curve_y2py_x3k(Fp2Elt::zero(p), "E1min");
    Fp2Elt w = Fp2Elt::omega(p);
    Fp2Elt m1 = -Fp2Elt::one(p);
    CurvePoint<Fp2Elt> b(m1, w);
    CurvePoint<Fp2Elt> b2(m1, w * w);
    CHECK(on_curve(b, E));
    CHECK(on_curve(b2, E));
    CHECK(add(b, b2, E).is_infinity());       // (-1, omega^2) = -(-1, omega)
    CHECK(scalar_mul(3, b, E).is_infinity()); // 3-torsion
    CHECK(!scalar_mul(2, b, E).is_infinity());
    // (0,0) and (0,-1) are the other rational 3-torsion points.
    CurvePoint<Fp2Elt> t1(Fp2Elt::zero(p), Fp2Elt::zero(p));
    CHECK(scalar_mul(3, t1, E).is_infinity());
}

TEST_CASE("mul_sqrt_minus3 squares to [-3]") {
    std::uint64_t p = 17;
    auto E = curve_y2py_x3k(Fp2Elt::zero(p), "E1min");
    auto pts = e1min_points_fp2(5);
    auto E5 = curve_y2py_x3k(Fp2Elt::zero(5), "E1min");
    for (const auto& P : pts) {
        auto Q = mul_sqrt_minus3(P);
        CHECK(on_curve(Q, E5));
        CHECK(mul_sqrt_minus3(Q) == scalar_mul(-3, P, E5));
    }
    // Kernel is exactly x = 0 together with infinity.
    for (const auto& P : pts)
        CHECK(mul_sqrt_minus3(P).is_infinity() == P.x().is_zero());
    // Endomorphism property phi(P+Q) = phi(P) + phi(Q) over F_17^2.
    auto pts17 = e1min_points_fp2(p);
    for (size_t i = 0; i < pts17.size(); i += 37) {
        for (size_t j = 0; j < pts17.size(); j += 41) {
            auto L = mul_sqrt_minus3(add(pts17[i], pts17[j], E));
            auto R = add(mul_sqrt_minus3(pts17[i]), mul_sqrt_minus3(pts17[j]), E);
            CHECK(L == R);
        }
    }
}

TEST_CASE("triple_explicit agrees with chord-tangent tripling") {
    for (std::uint64_t p : {5ull, 17ull}) {
        auto E = curve_y2py_x3k(Fp2Elt::zero(p), "E1min");
        for (const auto& P : e1min_points_fp2(p)) {
            auto T = triple_explicit(P);  // internal x-coordinate assertion
            CHECK(T == scalar_mul(3, P, E));
        }
    }
}

TEST_CASE("minimal models of E^n") {
    CHECK(is_cube_free(1));
    CHECK(is_cube_free(12));
    CHECK(!is_cube_free(8));
    CHECK(!is_cube_free(27));
    CHECK(is_cube_free(2601));  // 51^2

    auto m1 = minimal_model(1);  // y^2 + y = x^3
    CHECK(m1.model.a3 == 1);
    CHECK(m1.model.a6 == 0);
    CHECK(m1.model.discriminant() == -27);
    CHECK(m1.model.c4() == 0);

    auto m2 = minimal_model(2);  // y^2 = x^3 + 1
    CHECK(m2.model.a3 == 0);
    CHECK(m2.model.a6 == 1);
    CHECK(m2.model.discriminant() == -432);

    auto m3 = minimal_model(3);  // y^2 + y = x^3 + 2
    CHECK(m3.model.a6 == 2);
    CHECK(m3.model.discriminant() == -2187);  // -27 * 81 = -3^7

    // Transform correctness: a point on the minimal model maps to E^n.
    RationalPoint P(2, 3);  // on y^2 = x^3 + 1
    CHECK(on_curve(P, m2.model));
    auto En = curve_En(2);
    auto Q = to_En(m2, P);
    CHECK(on_curve(Q, En));
    CHECK(from_En(m2, Q) == P);

    RationalPoint O3(0, 1);  // on y^2 + y = x^3 + 2
    CHECK(on_curve(O3, m3.model));
    CHECK(on_curve(to_En(m3, O3), curve_En(3)));

    // E^n itself always has discriminant -2^12 27 n^4.
    mpz_class n = 7;
    mpq_class disc = curve_En(n).discriminant();
    CHECK(disc == mpq_class(-4096 * 27) * mpq_class(n * n * n * n));
}

TEST_CASE("Tate: E^1_min is 27a3 (type II at 3)") {
    auto m = minimal_model(1);
    auto d = tate_local(m.model, 3);
    CHECK(d.kodaira_type == "II");
    CHECK(d.conductor_exponent == 3);
    CHECK(d.tamagawa == 1);
    CHECK(d.vdisc == 3);
    CHECK(d.scaling_steps == 0);
    CHECK(conductor(m.model) == 27);
}

TEST_CASE("Tate: E^3_min has conductor 243 (type IV at 3)") {
    auto m = minimal_model(3);
    auto d = tate_local(m.model, 3);
    CHECK(d.kodaira_type == "IV");
    CHECK(d.conductor_exponent == 5);
    CHECK(d.vdisc == 7);
    CHECK(conductor(m.model) == 243);
}

TEST_CASE("Tate: E^2_min is 36a1") {
    auto m = minimal_model(2);
    auto d2 = tate_local(m.model, 2);
    auto d3 = tate_local(m.model, 3);
    CHECK(d2.kodaira_type == "IV");
    CHECK(d2.conductor_exponent == 2);
    CHECK(d3.kodaira_type == "III");
    CHECK(d3.conductor_exponent == 2);
    CHECK(d3.tamagawa == 2);
    CHECK(conductor(m.model) == 36);
}

TEST_CASE("Tate: non-minimal input is rescaled (E^1 -> 27a3)") {
    auto E1 = curve_En(1);  // y^2 = x^3 + 16, non-minimal at 2
    auto d2 = tate_local(E1, 2);
    CHECK(d2.kodaira_type == "I0");
    CHECK(d2.conductor_exponent == 0);
    CHECK(d2.scaling_steps == 1);
    CHECK(conductor(E1) == 27);
}

TEST_CASE("Tate: split multiplicative I5 on 11a1") {
    RationalCurve E{0, -1, 1, -10, -20, "11a1"};
    CHECK(E.discriminant() == -161051);  // -11^5
    auto d = tate_local(E, 11);
    CHECK(d.kodaira_type == "I5");
    CHECK(d.n == 5);
    CHECK(d.conductor_exponent == 1);
    CHECK(d.split_multiplicative);
    CHECK(d.tamagawa == 5);
    CHECK(conductor(E) == 11);
}

TEST_CASE("Tate: I0* on the quadratic twist y^2 = x^3 + 125") {
    RationalCurve E{0, 0, 0, 0, 125, "36a1 twisted by 5"};
    auto d = tate_local(E, 5);
    CHECK(d.kodaira_type == "I0*");
    CHECK(d.conductor_exponent == 2);
    CHECK(d.vdisc == 6);
    // P(T) = T^3 + 1 has exactly one root mod 5, so c = 2.
    CHECK(d.tamagawa == 2);
    CHECK(conductor(E) == 900);
}

TEST_CASE("Tate: I5* on 11a1 twisted by -11") {
    // y^2 = x^3 - 27 c4 d^2 x - 54 c6 d^3 with c4 = 496, c6 = 20008, d = -11.
    mpq_class d2x = mpq_class(-27) * 496 * 121;
    mpq_class d3x = mpq_class(-54) * 20008 * -1331;
    RationalCurve E{0, 0, 0, d2x, d3x, "11a1 twisted by -11"};
    auto loc = tate_local(E, 11);
    CHECK(loc.kodaira_type == "I5*");
    CHECK(loc.n == 5);
    CHECK(loc.conductor_exponent == 2);
    CHECK((loc.tamagawa == 2 || loc.tamagawa == 4));
}

TEST_CASE("height clearing multiple") {
    auto m3 = minimal_model(3);
    mpz_class M = height_clearing_multiple(m3.model);
    CHECK(M % 12 == 0);
    for (const auto& loc : local_data(m3.model)) CHECK(M % loc.tamagawa == 0);
}
