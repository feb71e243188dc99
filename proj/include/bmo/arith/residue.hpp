#pragma once

#include <cstdint>
#include <string>

#include "bmo/arith/primes.hpp"
#include "bmo/arith/rational.hpp"

namespace bmo {

/// Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p, by Euler's criterion.
inline int legendre_symbol(const Integer& a, const Integer& p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw DomainError("legendre_symbol: modulus must be an odd prime");
    Integer r = pow_mod(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

/// A square root of a modulo an odd prime p (Tonelli-Shanks); requires (a/p) = 1 or p | a.
inline Integer sqrt_mod(const Integer& a, const Integer& p) {
    Integer x = mod_floor(a, p);
    if (x == 0) return 0;
    if (legendre_symbol(x, p) != 1) throw DomainError("sqrt_mod: not a quadratic residue");
    Integer q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (legendre_symbol(z, p) != -1) ++z;
    Integer c = pow_mod(z, q, p), r = pow_mod(x, (q + 1) / 2, p), t = pow_mod(x, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        for (Integer u = t; u != 1; u = u * u % p) ++i;
        Integer b = c;
        for (int j = 0; j < m - i - 1; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

/// Value of a^((p-1)/4) mod p, a fourth root of unity in F_p.
///
/// `exponent` e in {0,1,2,3} is relative to the fixed generator i = g^((p-1)/4) of mu_4,
/// where g is the least primitive root mod p; the symbol equals i^e.
struct QuarticSymbol {
    int exponent = 0;
    std::uint64_t residue = 1;  ///< a^((p-1)/4) mod p

    bool is_one() const { return exponent == 0; }
    bool is_minus_one() const { return exponent == 2; }

    std::string label() const {
        switch (exponent) {
            case 0: return "+1";
            case 1: return "i";
            case 2: return "-1";
            default: return "-i";
        }
    }

    friend bool operator==(const QuarticSymbol&, const QuarticSymbol&) = default;
};

inline QuarticSymbol quartic_residue_symbol(const Integer& a, const Integer& p) {
    if (p < 5 || p % 4 != 1 || !is_prime(p)) throw DomainError("quartic_residue_symbol: need a prime p = 1 mod 4");
    if (mod_floor(a, p) == 0) throw DomainError("quartic_residue_symbol: p divides a");
    auto pu = p.convert_to<std::uint64_t>();
    auto au = mod_floor(a, p).convert_to<std::uint64_t>();
    std::uint64_t r = pow_mod(au, (pu - 1) / 4, pu);
    QuarticSymbol s;
    s.residue = r;
    if (r == 1) {
        s.exponent = 0;
    } else if (r == pu - 1) {
        s.exponent = 2;
    } else {
        std::uint64_t i = pow_mod(least_primitive_root(pu), (pu - 1) / 4, pu);
        s.exponent = (r == i) ? 1 : 3;
    }
    return s;
}

/// Fourth-power-free representative of a positive rational.
struct QuarticFreePart {
    Integer n0;  ///< fourth-power-free positive integer
    Rational m;  ///< q * m^4 == n0
};

inline QuarticFreePart quartic_free_part(const Rational& q) {
    if (q.sign() <= 0) throw DomainError("quartic_free_part: argument must be positive");
    Factorization fn = factorize(q.num());
    Factorization fd = factorize(q.den());
    Integer n0 = 1;
    Rational m = 1;
    auto absorb = [&](const Integer& p, int e) {
        int r = ((e % 4) + 4) % 4;
        int k = (r - e) / 4;
        n0 *= ipow(p, static_cast<unsigned>(r));
        m *= Rational(p).pow(k);
    };
    for (const auto& [p, e] : fn.factors) absorb(p, e);
    for (const auto& [p, e] : fd.factors) absorb(p, -e);
    return {n0, m};
}

}  // namespace bmo
