#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>

#include "bmo/arith/rational.hpp"

namespace bmo {

/// Default working precision (significant p-adic digits) for p <= 17.
inline constexpr int kDefaultPrecision = 40;

/// p^n, memoized; p and n are small in every caller.
inline const Integer& prime_power(std::uint64_t p, int n) {
    static std::map<std::pair<std::uint64_t, int>, Integer> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, ipow(Integer(p), static_cast<unsigned>(std::max(n, 0)))).first->second;
}

/// Element of Q_p known to finite precision: p^valuation * unit with the unit known mod p^precision.
///
/// A value indistinguishable from zero carries the zero flag; its valuation field then holds
/// the absolute precision A (the value is only known to be 0 mod p^A).
class PadicNumber {
public:
    PadicNumber() = default;

    static PadicNumber zero(std::uint64_t p, int absolute_precision) {
        PadicNumber z;
        z.p_ = p;
        z.zero_ = true;
        z.valuation_ = absolute_precision;
        z.precision_ = 0;
        return z;
    }

    /// p^valuation * unit with `precision` significant digits; unit must be coprime to p.
    static PadicNumber from_unit(std::uint64_t p, int valuation, const Integer& unit, int precision) {
        if (precision <= 0) throw DomainError("PadicNumber: precision must be positive");
        PadicNumber x;
        x.p_ = p;
        x.zero_ = false;
        x.valuation_ = valuation;
        x.precision_ = precision;
        x.unit_ = mod_floor(unit, prime_power(p, precision));
        if (x.unit_ % p == 0) throw DomainError("PadicNumber: unit part divisible by p");
        return x;
    }

    static PadicNumber from_rational(const Rational& q, std::uint64_t p, int precision = kDefaultPrecision) {
        if (precision <= 0) throw DomainError("PadicNumber: precision must be positive");
        if (q.is_zero()) return zero(p, precision);
        Integer n = q.num(), d = q.den();
        int v = strip_prime(n, p) - strip_prime(d, p);
        const Integer& mod = prime_power(p, precision);
        return from_unit(p, v, mod_floor(n, mod) * inverse_mod(d, mod), precision);
    }

    static PadicNumber from_integer(const Integer& n, std::uint64_t p, int precision = kDefaultPrecision) {
        return from_rational(Rational(n), p, precision);
    }

    std::uint64_t prime() const { return p_; }
    bool is_zero() const { return zero_; }
    /// Valuation; for a zero-flagged value this is the absolute precision.
    int valuation() const { return valuation_; }
    const Integer& unit() const { return unit_; }
    int precision() const { return precision_; }
    int absolute_precision() const { return zero_ ? valuation_ : valuation_ + precision_; }

    /// Same value, read with more (or fewer) significant digits; the stored unit is taken as exact.
    PadicNumber lifted(int absolute_precision) const {
        if (zero_) return zero(p_, absolute_precision);
        if (absolute_precision <= valuation_) return zero(p_, absolute_precision);
        return from_unit(p_, valuation_, unit_, absolute_precision - valuation_);
    }

    PadicNumber truncated(int absolute_precision) const {
        return absolute_precision >= this->absolute_precision() ? *this : lifted(absolute_precision);
    }

    /// Integer representative in [0, p^k) of a p-adic integer; requires k <= absolute precision.
    Integer residue(int k) const {
        if (k > absolute_precision()) throw InsufficientPrecision("PadicNumber::residue: not enough digits");
        if (zero_ || valuation_ >= k) return 0;
        if (valuation_ < 0) throw DomainError("PadicNumber::residue: value is not integral");
        return mod_floor(unit_ * prime_power(p_, valuation_), prime_power(p_, k));
    }

    /// p^v * u as an exact rational (the representative).
    Rational to_rational() const {
        if (zero_) return Rational(0);
        if (valuation_ >= 0) return Rational(unit_ * prime_power(p_, valuation_));
        return Rational(unit_, prime_power(p_, -valuation_));
    }

    PadicNumber operator-() const {
        if (zero_) return *this;
        PadicNumber r = *this;
        r.unit_ = prime_power(p_, precision_) - unit_;
        return r;
    }

    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
        check_same_prime(a, b);
        const std::uint64_t p = a.p_;
        int A = std::min(a.absolute_precision(), b.absolute_precision());
        if (a.zero_ && b.zero_) return zero(p, A);
        if (a.zero_) return b.truncated(A);
        if (b.zero_) return a.truncated(A);
        int vmin = std::min(a.valuation_, b.valuation_);
        if (A <= vmin) return zero(p, A);
        int L = A - vmin;
        const Integer& mod = prime_power(p, L);
        Integer s = a.unit_ * prime_power(p, a.valuation_ - vmin) + b.unit_ * prime_power(p, b.valuation_ - vmin);
        s = mod_floor(s, mod);
        if (s == 0) return zero(p, A);
        int k = strip_prime(s, p);
        return from_unit(p, vmin + k, s, L - k);
    }

    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
        check_same_prime(a, b);
        if (a.zero_ && b.zero_) return zero(a.p_, a.valuation_ + b.valuation_);
        if (a.zero_) return zero(a.p_, a.valuation_ + b.valuation_);
        if (b.zero_) return zero(a.p_, b.valuation_ + a.valuation_);
        int n = std::min(a.precision_, b.precision_);
        PadicNumber r;
        r.p_ = a.p_;
        r.zero_ = false;
        r.valuation_ = a.valuation_ + b.valuation_;
        r.precision_ = n;
        r.unit_ = a.unit_ * b.unit_ % prime_power(a.p_, n);
        return r;
    }

    PadicNumber inverse() const {
        if (zero_) throw InsufficientPrecision("PadicNumber: division by a value indistinguishable from zero");
        PadicNumber r = *this;
        r.valuation_ = -valuation_;
        r.unit_ = inverse_mod(unit_, prime_power(p_, precision_));
        return r;
    }

    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

    PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
    PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
    PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }
    PadicNumber& operator/=(const PadicNumber& o) { return *this = *this / o; }

    PadicNumber pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        PadicNumber r = from_integer(1, p_, std::max(precision_, 1));
        PadicNumber b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// True when a - b is zero at the combined precision.
    bool agrees_with(const PadicNumber& o) const { return (*this - o).is_zero(); }

    std::string str() const {
        if (zero_) return "O(" + std::to_string(p_) + "^" + std::to_string(valuation_) + ")";
        return std::to_string(p_) + "^" + std::to_string(valuation_) + "*" + unit_.str() + " + O(" +
               std::to_string(p_) + "^" + std::to_string(absolute_precision()) + ")";
    }

private:
    static void check_same_prime(const PadicNumber& a, const PadicNumber& b) {
        if (a.p_ != b.p_ || a.p_ == 0) throw DomainError("PadicNumber: mixing different (or unset) primes");
    }

    std::uint64_t p_ = 0;
    int valuation_ = 0;
    int precision_ = 0;
    Integer unit_ = 0;
    bool zero_ = true;
};

/// Constant n embedded with the precision of `like` plus margin.
inline PadicNumber padic_constant(const Integer& n, const PadicNumber& like) {
    int prec = std::max(like.absolute_precision(), like.precision()) + 4;
    return PadicNumber::from_integer(n, like.prime(), std::max(prec, 1));
}

}  // namespace bmo
