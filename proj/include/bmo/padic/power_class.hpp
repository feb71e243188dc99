#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "bmo/arith/residue.hpp"
#include "bmo/padic/padic_number.hpp"
#include "bmo/padic/place.hpp"

namespace bmo {

/// Class of x in Q_v^* / (Q_v^*)^n, n in {2, 3, 4}.
///
/// The canonical data is (valuation mod n, unit label):
///   - odd p, p not dividing n: label e in [0, g), g = gcd(n, p-1), with u^((p-1)/g) = w^e
///     for w = r^((p-1)/g) and r the least primitive root;
///   - p = 2: the unit mod 8 (n = 2) or mod 16 (n = 4); n = 3 has the single label 1;
///   - p = 3, n = 3: the coset of the unit mod 9 modulo {+-1}, labelled by 1, 2 or 4;
///   - the real place (n = 2 only): 0 for positive, 1 for negative.
struct PowerClass {
    std::uint64_t prime = 0;  ///< 0 encodes the real place
    int n = 2;
    int val_mod = 0;
    std::int64_t unit_label = 0;

    friend auto operator<=>(const PowerClass&, const PowerClass&) = default;

    bool is_identity() const;
    /// Least positive integer unit with this label, times p^val_mod (or +-1 at the real place).
    Rational representative() const;
    std::string str() const {
        return "[" + (prime == 0 ? std::string("inf") : std::to_string(prime)) + ",n=" + std::to_string(n) +
               ",v=" + std::to_string(val_mod) + ",u=" + std::to_string(unit_label) + "]";
    }
};

struct PowerClassResult {
    PowerClass cls;
    bool is_nth_power = false;
};

namespace detail {

inline void check_exponent(int n) {
    if (n < 2 || n > 4) throw DomainError("power_class: exponent must be 2, 3 or 4");
}

/// Digits of the unit needed to read off its label.
inline int unit_digits_needed(std::uint64_t p, int n) {
    if (p == 2) return n == 2 ? 3 : (n == 4 ? 4 : 1);
    if (p == 3 && n == 3) return 2;
    return 1;
}

inline std::int64_t identity_label(std::uint64_t p, int n) {
    if (p == 0) return 0;
    if (p == 2 || (p == 3 && n == 3)) return 1;
    return 0;
}

inline std::int64_t unit_label(std::uint64_t p, int n, const Integer& unit) {
    if (p == 2) {
        if (n == 3) return 1;
        return mod_floor(unit, Integer(n == 2 ? 8 : 16)).convert_to<std::int64_t>();
    }
    if (p == 3 && n == 3) {
        auto r = mod_floor(unit, Integer(9)).convert_to<std::int64_t>();
        return std::min(r, 9 - r);
    }
    std::uint64_t g = std::gcd(static_cast<std::uint64_t>(n), p - 1);
    if (g == 1) return 0;
    std::uint64_t u = mod_floor(unit, Integer(p)).convert_to<std::uint64_t>();
    std::uint64_t r = pow_mod(u, (p - 1) / g, p);
    std::uint64_t w = pow_mod(least_primitive_root(p), (p - 1) / g, p);
    std::uint64_t acc = 1;
    for (std::uint64_t e = 0; e < g; ++e) {
        if (acc == r) return static_cast<std::int64_t>(e);
        acc = mul_mod(acc, w, p);
    }
    throw DomainError("power_class: modulus is not prime");
}

}  // namespace detail

inline bool PowerClass::is_identity() const {
    return val_mod == 0 && unit_label == detail::identity_label(prime, n);
}

inline PowerClassResult power_class(const PadicNumber& x, int n) {
    detail::check_exponent(n);
    if (x.is_zero()) throw InsufficientPrecision("power_class: value indistinguishable from zero");
    std::uint64_t p = x.prime();
    if (x.precision() < detail::unit_digits_needed(p, n))
        throw InsufficientPrecision("power_class: unit known to too few digits");
    PowerClass c;
    c.prime = p;
    c.n = n;
    c.val_mod = ((x.valuation() % n) + n) % n;
    c.unit_label = detail::unit_label(p, n, x.unit());
    return {c, c.is_identity()};
}

/// Power class of a nonzero rational at the place v.
inline PowerClassResult power_class(const Rational& x, int n, const Place& v) {
    detail::check_exponent(n);
    if (x.is_zero()) throw DomainError("power_class: zero has no class");
    if (v.is_infinite()) {
        if (n != 2) throw DomainError("power_class: only square classes exist at the real place");
        PowerClass c;
        c.prime = 0;
        c.n = 2;
        c.unit_label = x.sign() < 0 ? 1 : 0;
        return {c, c.is_identity()};
    }
    return power_class(PadicNumber::from_rational(x, v.prime(), 8), n);
}

inline Rational PowerClass::representative() const {
    if (prime == 0) return Rational(unit_label == 0 ? 1 : -1);
    Rational pv = Rational(Integer(prime)).pow(val_mod);
    if (prime == 2 || (prime == 3 && n == 3)) return pv * Rational(unit_label);
    for (std::int64_t u = 1;; ++u) {
        if (u % static_cast<std::int64_t>(prime) == 0) continue;
        if (detail::unit_label(prime, n, Integer(u)) == unit_label) return pv * Rational(u);
    }
}

/// Group law on classes: class(x) * class(y) = class(xy).
inline PowerClass operator*(const PowerClass& a, const PowerClass& b) {
    if (a.prime != b.prime || a.n != b.n) throw DomainError("PowerClass: incompatible classes");
    Place v = a.prime == 0 ? Place::infinite() : Place::finite(a.prime);
    return power_class(a.representative() * b.representative(), a.n, v).cls;
}

}  // namespace bmo
