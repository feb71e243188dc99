#pragma once

#include <cstdint>
#include <ostream>

#include "bmo/arith/rational.hpp"

namespace bmo {

/// Element of Z/pZ with the modulus carried at runtime (p < 2^62).
class ModInt {
public:
    ModInt() = default;
    ModInt(std::int64_t v, std::uint64_t p) : v_(static_cast<std::uint64_t>(mod_floor(v, static_cast<std::int64_t>(p)))), p_(p) {}

    static ModInt from_rational(const Rational& r, std::uint64_t p) {
        auto n = mod_floor(r.num(), Integer(p)).convert_to<std::int64_t>();
        auto d = mod_floor(r.den(), Integer(p)).convert_to<std::int64_t>();
        if (d == 0) throw DomainError("ModInt: denominator divisible by the modulus");
        return ModInt(n, p) / ModInt(d, p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    ModInt operator-() const { return make(v_ == 0 ? 0 : p_ - v_); }
    ModInt& operator+=(const ModInt& o) {
        v_ += o.v_;
        if (v_ >= p_) v_ -= p_;
        return *this;
    }
    ModInt& operator-=(const ModInt& o) {
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
        return *this;
    }
    ModInt& operator*=(const ModInt& o) {
        v_ = mul_mod(v_, o.v_, p_);
        return *this;
    }
    ModInt& operator/=(const ModInt& o) { return *this *= o.inverse(); }

    friend ModInt operator+(ModInt a, const ModInt& b) { return a += b; }
    friend ModInt operator-(ModInt a, const ModInt& b) { return a -= b; }
    friend ModInt operator*(ModInt a, const ModInt& b) { return a *= b; }
    friend ModInt operator/(ModInt a, const ModInt& b) { return a /= b; }
    friend bool operator==(const ModInt& a, const ModInt& b) { return a.v_ == b.v_; }

    ModInt pow(std::uint64_t e) const { return make(pow_mod(v_, e, p_)); }
    ModInt inverse() const {
        if (v_ == 0) throw DomainError("ModInt: inverse of zero");
        return pow(p_ - 2);
    }

    friend std::ostream& operator<<(std::ostream& os, const ModInt& a) { return os << a.v_; }

private:
    ModInt make(std::uint64_t reduced) const {
        ModInt r;
        r.v_ = reduced;
        r.p_ = p_;
        return r;
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 1;
};

}  // namespace bmo
