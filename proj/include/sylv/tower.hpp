// Generic cubic Kummer extension F[u]/(u^3 - m) over a field containing
// omega, and the concrete tower Q(omega, cbrt(3), cbrt(p)).
#pragma once

#include <stdexcept>

#include <gmpxx.h>

#include "sylv/fp.hpp"
#include "sylv/qomega.hpp"

namespace sylv {

// field_from_int: build a field constant in the same "field context" as ctx.
inline mpq_class field_from_int(const mpq_class&, long n) { return mpq_class(n); }
inline QOmega field_from_int(const QOmega&, long n) { return QOmega(n); }
inline FpElt field_from_int(const FpElt& ctx, long n) { return FpElt::from_int(n, ctx.modulus()); }
inline Fp2Elt field_from_int(const Fp2Elt& ctx, long n) {
    return Fp2Elt::from_base(FpElt::from_int(n, ctx.modulus()));
}

// omega_like: a primitive cube root of unity in the field of ctx.
inline QOmega omega_like(const QOmega&) { return QOmega::omega(); }
inline Fp2Elt omega_like(const Fp2Elt& ctx) { return Fp2Elt::omega(ctx.modulus()); }

// c0 + c1*u + c2*u^2 with u^3 = m. The base field must contain omega, so the
// norm to F is a product of the three u -> omega^i u conjugates.
template <class F>
class CubicExt {
public:
    CubicExt() = default;
    CubicExt(F c0, F c1, F c2, F m)
        : c0_(std::move(c0)), c1_(std::move(c1)), c2_(std::move(c2)), m_(std::move(m)) {}
    static CubicExt from_base(const F& v, const F& m) {
        F zero = field_from_int(m, 0);
        return CubicExt(v, zero, zero, m);
    }
    static CubicExt generator(const F& m) {
        F zero = field_from_int(m, 0);
        return CubicExt(zero, field_from_int(m, 1), zero, m);
    }

    const F& c0() const { return c0_; }
    const F& c1() const { return c1_; }
    const F& c2() const { return c2_; }
    const F& radicand() const { return m_; }
    bool is_zero() const { return c0_.is_zero() && c1_.is_zero() && c2_.is_zero(); }
    bool in_base() const { return c1_.is_zero() && c2_.is_zero(); }

    CubicExt operator+(const CubicExt& o) const { return CubicExt(c0_ + o.c0_, c1_ + o.c1_, c2_ + o.c2_, m_); }
    CubicExt operator-(const CubicExt& o) const { return CubicExt(c0_ - o.c0_, c1_ - o.c1_, c2_ - o.c2_, m_); }
    CubicExt operator-() const { return CubicExt(-c0_, -c1_, -c2_, m_); }
    CubicExt operator*(const CubicExt& o) const {
        // (c0 + c1 u + c2 u^2)(d0 + d1 u + d2 u^2), reduced with u^3 = m.
        F e0 = c0_ * o.c0_ + m_ * (c1_ * o.c2_ + c2_ * o.c1_);
        F e1 = c0_ * o.c1_ + c1_ * o.c0_ + m_ * (c2_ * o.c2_);
        F e2 = c0_ * o.c2_ + c1_ * o.c1_ + c2_ * o.c0_;
        return CubicExt(e0, e1, e2, m_);
    }
    // u -> omega * u; fixes the base field.
    CubicExt galois() const {
        F w = omega_like(m_);
        F w2 = w * w;
        return CubicExt(c0_, c1_ * w, c2_ * w2, m_);
    }
    CubicExt inverse() const {
        if (is_zero()) throw std::domain_error("CubicExt: inverse of zero");
        CubicExt s1 = galois();
        CubicExt s2 = s1.galois();
        CubicExt adj = s1 * s2;
        CubicExt nrm = *this * adj;
        if (!nrm.in_base()) throw std::logic_error("CubicExt: norm not in base field");
        F ninv = nrm.c0_.inverse();
        return CubicExt(adj.c0_ * ninv, adj.c1_ * ninv, adj.c2_ * ninv, m_);
    }
    CubicExt operator/(const CubicExt& o) const { return *this * o.inverse(); }
    bool operator==(const CubicExt& o) const { return c0_ == o.c0_ && c1_ == o.c1_ && c2_ == o.c2_; }
    bool operator!=(const CubicExt& o) const { return !(*this == o); }

private:
    F c0_, c1_, c2_;
    F m_;
};

template <class F>
CubicExt<F> field_from_int(const CubicExt<F>& ctx, long n) {
    return CubicExt<F>::from_base(field_from_int(ctx.radicand(), n), ctx.radicand());
}
template <class F>
CubicExt<F> omega_like(const CubicExt<F>& ctx) {
    return CubicExt<F>::from_base(omega_like(ctx.radicand()), ctx.radicand());
}

// Q(omega, cbrt(3)): inner layer of the tower.
using CubeField = CubicExt<QOmega>;
// Q(omega, cbrt(3), cbrt(p)): the field L_(3,p) housing the Heegner points.
using TowerNumber = CubicExt<CubeField>;

inline CubeField cube_field_context() { return CubeField::from_base(QOmega(0), QOmega(3)); }

inline TowerNumber tower_context(long p) {
    CubeField m = CubeField::from_base(QOmega(p), QOmega(3));
    return TowerNumber::from_base(m, m);
}

// cbrt(3) inside the tower over p.
inline TowerNumber tower_cbrt3(long p) {
    CubeField m = CubeField::from_base(QOmega(p), QOmega(3));
    CubeField s = CubeField::generator(QOmega(3));
    return TowerNumber::from_base(s, m);
}

// cbrt(p) inside the tower over p.
inline TowerNumber tower_cbrtp(long p) {
    CubeField m = CubeField::from_base(QOmega(p), QOmega(3));
    return TowerNumber::generator(m);
}

inline TowerNumber tower_scalar(long p, const QOmega& v) {
    CubeField m = CubeField::from_base(QOmega(p), QOmega(3));
    return TowerNumber::from_base(CubeField::from_base(v, QOmega(3)), m);
}

} // namespace sylv
