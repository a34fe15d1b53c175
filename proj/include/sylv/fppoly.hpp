// Dense univariate polynomials over F_p (64-bit p): the little that root
// detection via gcd with the Frobenius polynomial needs.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "sylv/fp.hpp"

namespace sylv {

// Coefficients low-to-high; always normalized (no trailing zeros).
class FpPoly {
public:
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs = {})
        : p_(p), c_(std::move(coeffs)) {
        for (auto& v : c_) v %= p_;
        normalize();
    }

    std::uint64_t modulus() const { return p_; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
    std::uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }

    static FpPoly x(std::uint64_t p) { return FpPoly(p, {0, 1}); }
    static FpPoly constant(std::uint64_t p, std::uint64_t v) { return FpPoly(p, {v}); }

    std::uint64_t eval(std::uint64_t xv) const {
        std::uint64_t acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = (mulmod_u64(acc, xv % p_, p_) + *it) % p_;
        return acc;
    }

    FpPoly operator+(const FpPoly& o) const {
        check(o);
        std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = (coeff(i) + o.coeff(i)) % p_;
        return FpPoly(p_, std::move(r));
    }
    FpPoly operator-(const FpPoly& o) const {
        check(o);
        std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = (coeff(i) + p_ - o.coeff(i)) % p_;
        return FpPoly(p_, std::move(r));
    }
    FpPoly operator*(const FpPoly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return FpPoly(p_);
        std::vector<std::uint64_t> r(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = (r[i + j] + mulmod_u64(c_[i], o.c_[j], p_)) % p_;
        return FpPoly(p_, std::move(r));
    }

    // Remainder of *this modulo a nonzero divisor.
    FpPoly rem(const FpPoly& d) const {
        check(d);
        if (d.is_zero()) throw std::domain_error("FpPoly: division by zero");
        std::vector<std::uint64_t> r = c_;
        std::uint64_t lead_inv = powmod_u64(d.c_.back(), p_ - 2, p_);
        while (r.size() >= d.c_.size()) {
            std::uint64_t q = mulmod_u64(r.back(), lead_inv, p_);
            size_t off = r.size() - d.c_.size();
            for (size_t i = 0; i < d.c_.size(); ++i)
                r[off + i] = (r[off + i] + p_ - mulmod_u64(q, d.c_[i], p_)) % p_;
            // The leading term cancels exactly, so the size strictly drops.
            while (!r.empty() && r.back() == 0) r.pop_back();
        }
        return FpPoly(p_, std::move(r));
    }

    FpPoly monic() const {
        if (is_zero()) return *this;
        std::uint64_t inv = powmod_u64(c_.back(), p_ - 2, p_);
        std::vector<std::uint64_t> r = c_;
        for (auto& v : r) v = mulmod_u64(v, inv, p_);
        return FpPoly(p_, std::move(r));
    }

    static FpPoly gcd(FpPoly a, FpPoly b) {
        while (!b.is_zero()) {
            FpPoly r = a.rem(b);
            a = b;
            b = r;
        }
        return a.monic();
    }

    // x^e modulo f, for arbitrary-size exponents (Frobenius powers).
    static FpPoly powmod_x(const mpz_class& e, const FpPoly& f) {
        std::uint64_t p = f.modulus();
        FpPoly result = FpPoly::constant(p, 1).rem(f);
        FpPoly base = FpPoly::x(p).rem(f);
        mpz_class n = e;
        if (n < 0) throw std::invalid_argument("powmod_x: negative exponent");
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t())) result = (result * base).rem(f);
            base = (base * base).rem(f);
            n >>= 1;
        }
        return result;
    }

    FpPoly derivative() const {
        if (c_.size() <= 1) return FpPoly(p_);
        std::vector<std::uint64_t> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = mulmod_u64(c_[i], i % p_, p_);
        return FpPoly(p_, std::move(r));
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check(const FpPoly& o) const {
        if (p_ != o.p_) throw std::invalid_argument("FpPoly: modulus mismatch");
    }
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
};

} // namespace sylv
