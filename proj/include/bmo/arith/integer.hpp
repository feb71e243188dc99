#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "bmo/errors.hpp"

namespace bmo {

using Integer = boost::multiprecision::cpp_int;

/// Non-negative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

inline Integer pow_mod(const Integer& base, const Integer& exp, const Integer& m) {
    if (m == 1) return 0;
    return boost::multiprecision::powm(mod_floor(base, m), exp, m);
}

inline Integer ipow(const Integer& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer abs(const Integer& a) {
    return a < 0 ? Integer(-a) : a;
}

/// Extended Euclid: returns (g, x) with a*x = g (mod m), g = gcd(a, m).
inline std::pair<Integer, Integer> gcd_inverse(const Integer& a, const Integer& m) {
    Integer old_r = mod_floor(a, m), r = m;
    Integer old_s = 1, s = 0;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    return {old_r, mod_floor(old_s, m)};
}

/// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
    auto [g, x] = gcd_inverse(a, m);
    if (g != 1) throw DomainError("inverse_mod: element is not invertible");
    return x;
}

inline Integer isqrt(const Integer& n) {
    if (n < 0) throw DomainError("isqrt of a negative integer");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Integer& n) {
    if (n < 0) return false;
    Integer r = isqrt(n);
    return r * r == n;
}

/// floor(n^(1/4)) for n >= 0.
inline Integer iroot4(const Integer& n) {
    return isqrt(isqrt(n));
}

inline bool is_fourth_power(const Integer& n) {
    if (n < 0) return false;
    Integer r = iroot4(n);
    return r * r * r * r == n;
}

/// Exponent of p in n (n != 0); n is divided by p^e in place.
inline int strip_prime(Integer& n, const Integer& p) {
    int e = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

inline int valuation(Integer n, const Integer& p) {
    if (n == 0) throw DomainError("valuation of zero");
    return strip_prime(n, p);
}

inline std::int64_t to_i64(const Integer& n) {
    return n.convert_to<std::int64_t>();
}

inline std::string to_string(const Integer& n) {
    return n.str();
}

}  // namespace bmo
