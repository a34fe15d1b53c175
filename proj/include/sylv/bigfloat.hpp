// RAII wrappers around MPFR: arbitrary-precision reals and complex numbers.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace sylv {

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(double d, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    BigFloat(long n, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, n, MPFR_RNDN);
    }
    BigFloat(const mpz_class& n, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, n.get_mpz_t(), MPFR_RNDN);
    }
    BigFloat(const mpq_class& q, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat euler_gamma(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    mpz_class round_to_integer() const {
        mpz_class z;
        mpfr_t t;
        mpfr_init2(t, prec());
        mpfr_round(t, v_);
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        return z;
    }
    std::string to_string(std::size_t digits = 20) const {
        char* s = nullptr;
        if (mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_) < 0)
            throw std::runtime_error("BigFloat: formatting failed");
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
    bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
    bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }

private:
    static mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
        return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
    }

public:
#define SYLV_BF_BINOP(op, fn)                                   \
    friend BigFloat operator op(const BigFloat& a, const BigFloat& b) { \
        BigFloat r(join(a, b));                                 \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                        \
        return r;                                               \
    }
    SYLV_BF_BINOP(+, mpfr_add)
    SYLV_BF_BINOP(-, mpfr_sub)
    SYLV_BF_BINOP(*, mpfr_mul)
    SYLV_BF_BINOP(/, mpfr_div)
#undef SYLV_BF_BINOP

    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

#define SYLV_BF_UNFUN(name, fn)              \
    friend BigFloat name(const BigFloat& a) { \
        BigFloat r(a.prec());                \
        fn(r.v_, a.v_, MPFR_RNDN);           \
        return r;                            \
    }
    SYLV_BF_UNFUN(sqrt, mpfr_sqrt)
    SYLV_BF_UNFUN(cbrt, mpfr_cbrt)
    SYLV_BF_UNFUN(exp, mpfr_exp)
    SYLV_BF_UNFUN(log, mpfr_log)
    SYLV_BF_UNFUN(sin, mpfr_sin)
    SYLV_BF_UNFUN(cos, mpfr_cos)
    SYLV_BF_UNFUN(abs, mpfr_abs)
    SYLV_BF_UNFUN(gamma, mpfr_gamma)
#undef SYLV_BF_UNFUN

    friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
        BigFloat r(join(y, x));
        mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
        return r;
    }
    friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
        return r;
    }
    friend BigFloat pow_ui(const BigFloat& a, unsigned long e) {
        BigFloat r(a.prec());
        mpfr_pow_ui(r.raw(), a.raw(), e, MPFR_RNDN);
        return r;
    }
    // 2^e as a BigFloat, for tolerance thresholds.
    static BigFloat pow2(long e, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

class BigComplex {
public:
    BigComplex() = default;
    explicit BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    BigComplex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }

    static BigComplex i(mpfr_prec_t prec) { return BigComplex(BigFloat(0L, prec), BigFloat(1L, prec)); }

    BigComplex operator+(const BigComplex& o) const { return {re_ + o.re_, im_ + o.im_}; }
    BigComplex operator-(const BigComplex& o) const { return {re_ - o.re_, im_ - o.im_}; }
    BigComplex operator-() const { return {-re_, -im_}; }
    BigComplex operator*(const BigComplex& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }
    BigComplex operator/(const BigComplex& o) const {
        BigFloat n = o.re_ * o.re_ + o.im_ * o.im_;
        if (n.is_zero()) throw std::domain_error("BigComplex: division by zero");
        return {(re_ * o.re_ + im_ * o.im_) / n, (im_ * o.re_ - re_ * o.im_) / n};
    }
    BigComplex operator*(const BigFloat& s) const { return {re_ * s, im_ * s}; }
    BigComplex operator/(const BigFloat& s) const { return {re_ / s, im_ / s}; }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
    BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

    BigComplex conj() const { return {re_, -im_}; }
    friend BigFloat abs(const BigComplex& z) { return hypot(z.re_, z.im_); }
    friend BigFloat arg(const BigComplex& z) { return atan2(z.im_, z.re_); }

    friend BigComplex exp(const BigComplex& z) {
        BigFloat m = exp(z.re_);
        return {m * cos(z.im_), m * sin(z.im_)};
    }
    // Principal square root.
    friend BigComplex sqrt(const BigComplex& z) {
        BigFloat r = abs(z);
        if (r.is_zero()) return BigComplex(z.prec());
        BigFloat half(mpq_class(1, 2), z.prec());
        BigFloat m = sqrt(r);
        BigFloat a = arg(z) * half;
        return {m * cos(a), m * sin(a)};
    }
    // Principal cube root.
    friend BigComplex cbrt_principal(const BigComplex& z) {
        BigFloat r = abs(z);
        if (r.is_zero()) return BigComplex(z.prec());
        BigFloat third(mpq_class(1, 3), z.prec());
        BigFloat m = cbrt(r);
        BigFloat a = arg(z) * third;
        return {m * cos(a), m * sin(a)};
    }
    // z^n for small non-negative n.
    friend BigComplex pow_ui(const BigComplex& z, unsigned long n) {
        BigComplex acc(BigFloat(1L, z.prec()), BigFloat(0L, z.prec()));
        BigComplex base = z;
        while (n > 0) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }

private:
    BigFloat re_, im_;
};

// e^{2 pi i / 3} at the given precision.
inline BigComplex omega_numeric(mpfr_prec_t prec) {
    BigFloat half(mpq_class(-1, 2), prec);
    BigFloat s3 = sqrt(BigFloat(3L, prec)) / BigFloat(2L, prec);
    return BigComplex(half, s3);
}

} // namespace sylv
