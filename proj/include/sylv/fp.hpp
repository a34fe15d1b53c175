// Prime field F_p for 64-bit p, and its quadratic extension F_p[w]/(w^2+w+1).
#pragma once

#include <cstdint>
#include <stdexcept>

#include "sylv/primality.hpp"

namespace sylv {

// Element of F_p. Carries its modulus; mixed-modulus arithmetic throws.
class FpElt {
public:
    FpElt() : value_(0), p_(0) {}
    FpElt(std::uint64_t value, std::uint64_t p) : value_(value % p), p_(p) {}
    static FpElt from_int(std::int64_t v, std::uint64_t p) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        if (r < 0) r += static_cast<std::int64_t>(p);
        return FpElt(static_cast<std::uint64_t>(r), p);
    }

    std::uint64_t value() const { return value_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return value_ == 0; }

    FpElt operator+(const FpElt& o) const {
        check(o);
        std::uint64_t s = value_ + o.value_;
        if (s >= p_ || s < value_) s -= p_;
        return raw(s, p_);
    }
    FpElt operator-(const FpElt& o) const {
        check(o);
        return raw(value_ >= o.value_ ? value_ - o.value_ : value_ + p_ - o.value_, p_);
    }
    FpElt operator-() const { return raw(value_ == 0 ? 0 : p_ - value_, p_); }
    FpElt operator*(const FpElt& o) const {
        check(o);
        return raw(mulmod_u64(value_, o.value_, p_), p_);
    }
    FpElt pow(std::uint64_t e) const { return raw(powmod_u64(value_, e, p_), p_); }
    FpElt inverse() const {
        if (value_ == 0) throw std::domain_error("FpElt: inverse of zero");
        return pow(p_ - 2);  // p prime
    }
    FpElt operator/(const FpElt& o) const { return *this * o.inverse(); }
    bool operator==(const FpElt& o) const { return value_ == o.value_ && p_ == o.p_; }
    bool operator!=(const FpElt& o) const { return !(*this == o); }

private:
    static FpElt raw(std::uint64_t v, std::uint64_t p) {
        FpElt e;
        e.value_ = v;
        e.p_ = p;
        return e;
    }
    void check(const FpElt& o) const {
        if (p_ != o.p_) throw std::invalid_argument("FpElt: modulus mismatch");
    }
    std::uint64_t value_;
    std::uint64_t p_;
};

// Element a + b*w of F_{p^2} = F_p[w]/(w^2+w+1). Requires p = 2 (mod 3) so the
// polynomial is irreducible. w is a primitive cube root of unity and
// s = 2w+1 satisfies s^2 = -3.
class Fp2Elt {
public:
    Fp2Elt() = default;
    Fp2Elt(FpElt a, FpElt b) : a_(a), b_(b) {
        if (a.modulus() != b.modulus()) throw std::invalid_argument("Fp2Elt: modulus mismatch");
    }
    static Fp2Elt from_base(FpElt a) { return Fp2Elt(a, FpElt(0, a.modulus())); }
    static Fp2Elt omega(std::uint64_t p) { return Fp2Elt(FpElt(0, p), FpElt(1, p)); }
    static Fp2Elt sqrt_minus3(std::uint64_t p) { return Fp2Elt(FpElt(1, p), FpElt(2, p)); }
    static Fp2Elt zero(std::uint64_t p) { return Fp2Elt(FpElt(0, p), FpElt(0, p)); }
    static Fp2Elt one(std::uint64_t p) { return Fp2Elt(FpElt(1, p), FpElt(0, p)); }

    const FpElt& a() const { return a_; }
    const FpElt& b() const { return b_; }
    std::uint64_t modulus() const { return a_.modulus(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    Fp2Elt operator+(const Fp2Elt& o) const { return Fp2Elt(a_ + o.a_, b_ + o.b_); }
    Fp2Elt operator-(const Fp2Elt& o) const { return Fp2Elt(a_ - o.a_, b_ - o.b_); }
    Fp2Elt operator-() const { return Fp2Elt(-a_, -b_); }
    // (a+bw)(c+dw) = ac + (ad+bc)w + bd w^2, with w^2 = -w-1.
    Fp2Elt operator*(const Fp2Elt& o) const {
        FpElt ac = a_ * o.a_, bd = b_ * o.b_;
        FpElt mid = a_ * o.b_ + b_ * o.a_;
        return Fp2Elt(ac - bd, mid - bd);
    }
    // Galois conjugate: w -> w^p = w^2 = -1-w.
    Fp2Elt conj() const { return Fp2Elt(a_ - b_, -b_); }
    // Norm a^2 - ab + b^2 lands in F_p.
    FpElt norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
    Fp2Elt inverse() const {
        if (is_zero()) throw std::domain_error("Fp2Elt: inverse of zero");
        FpElt n = norm().inverse();
        Fp2Elt c = conj();
        return Fp2Elt(c.a_ * n, c.b_ * n);
    }
    Fp2Elt operator/(const Fp2Elt& o) const { return *this * o.inverse(); }
    Fp2Elt pow(std::uint64_t e) const {
        Fp2Elt result = one(modulus());
        Fp2Elt base = *this;
        while (e) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }
    bool operator==(const Fp2Elt& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const Fp2Elt& o) const { return !(*this == o); }

private:
    FpElt a_, b_;
};

} // namespace sylv
