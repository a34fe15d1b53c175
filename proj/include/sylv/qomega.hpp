// The field Q(omega), omega a primitive cube root of unity, and the ring
// Z[omega] with Euclidean gcd.
#pragma once

#include <stdexcept>

#include <gmpxx.h>

namespace sylv {

// a + b*omega with rational coordinates; omega^2 = -1 - omega.
class QOmega {
public:
    QOmega() : a_(0), b_(0) {}
    QOmega(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {}
    explicit QOmega(long n) : a_(n), b_(0) {}
    static QOmega omega() { return QOmega(0, 1); }
    static QOmega sqrt_minus3() { return QOmega(1, 2); }  // 2*omega + 1

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QOmega operator+(const QOmega& o) const { return QOmega(a_ + o.a_, b_ + o.b_); }
    QOmega operator-(const QOmega& o) const { return QOmega(a_ - o.a_, b_ - o.b_); }
    QOmega operator-() const { return QOmega(-a_, -b_); }
    QOmega operator*(const QOmega& o) const {
        mpq_class bd = b_ * o.b_;
        return QOmega(a_ * o.a_ - bd, a_ * o.b_ + b_ * o.a_ - bd);
    }
    QOmega conj() const { return QOmega(a_ - b_, -b_); }  // omega -> omega^2
    mpq_class norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
    QOmega inverse() const {
        mpq_class n = norm();
        if (n == 0) throw std::domain_error("QOmega: inverse of zero");
        QOmega c = conj();
        return QOmega(c.a_ / n, c.b_ / n);
    }
    QOmega operator/(const QOmega& o) const { return *this * o.inverse(); }
    bool operator==(const QOmega& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QOmega& o) const { return !(*this == o); }

private:
    mpq_class a_, b_;
};

// a + b*omega with integer coordinates.
class ZOmega {
public:
    ZOmega() : a_(0), b_(0) {}
    ZOmega(mpz_class a, mpz_class b) : a_(std::move(a)), b_(std::move(b)) {}

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    ZOmega operator+(const ZOmega& o) const { return ZOmega(a_ + o.a_, b_ + o.b_); }
    ZOmega operator-(const ZOmega& o) const { return ZOmega(a_ - o.a_, b_ - o.b_); }
    ZOmega operator-() const { return ZOmega(-a_, -b_); }
    ZOmega operator*(const ZOmega& o) const {
        mpz_class bd = b_ * o.b_;
        return ZOmega(a_ * o.a_ - bd, a_ * o.b_ + b_ * o.a_ - bd);
    }
    ZOmega conj() const { return ZOmega(a_ - b_, -b_); }
    mpz_class norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
    bool operator==(const ZOmega& o) const { return a_ == o.a_ && b_ == o.b_; }

    // Round-to-nearest division; remainder has norm strictly below |divisor|'s.
    static ZOmega div_round(const ZOmega& num, const ZOmega& den) {
        mpz_class n = den.norm();
        ZOmega t = num * den.conj();  // exact quotient is t / n
        auto round_div = [](const mpz_class& x, const mpz_class& n2) {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), n2.get_mpz_t());
            if (2 * r > n2) q += 1;
            return q;
        };
        return ZOmega(round_div(t.a_, n), round_div(t.b_, n));
    }

    static ZOmega gcd(ZOmega x, ZOmega y) {
        while (!y.is_zero()) {
            ZOmega q = div_round(x, y);
            ZOmega r = x - q * y;
            x = y;
            y = r;
        }
        return x;
    }

private:
    mpz_class a_, b_;
};

} // namespace sylv
