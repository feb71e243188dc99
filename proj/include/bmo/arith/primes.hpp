#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "bmo/arith/integer.hpp"

namespace bmo {

namespace detail {

inline bool mr_witness_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline bool mr_witness(const Integer& n, const Integer& a, const Integer& d, int r) {
    Integer x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs (first twelve prime bases).
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (!detail::mr_witness_u64(n, a, d, r)) return false;
    }
    return true;
}

/// Primality of an arbitrary integer. Exact below 2^64; above, 40 Miller-Rabin rounds
/// with bases drawn from a fixed-seed generator, so the answer is reproducible.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime(n.convert_to<std::uint64_t>());
    for (unsigned q : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U}) {
        if (n % q == 0) return false;
    }
    Integer d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    std::mt19937_64 rng(0x5eed5eedULL);
    for (int round = 0; round < 40; ++round) {
        Integer a = 2 + Integer(rng()) % (n - 3);
        if (!detail::mr_witness(n, a, d, r)) return false;
    }
    return true;
}

/// Primes <= limit by the sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

/// sign * prod(p^e) with strictly increasing primes.
struct Factorization {
    int sign = 1;
    std::vector<std::pair<Integer, int>> factors;

    Integer value() const {
        Integer v = sign;
        for (const auto& [p, e] : factors) v *= ipow(p, static_cast<unsigned>(e));
        return v;
    }

    int exponent_of(const Integer& p) const {
        for (const auto& [q, e] : factors) {
            if (q == p) return e;
        }
        return 0;
    }
};

namespace detail {

/// Brent's variant of Pollard rho with polynomial x^2 + c and start 2.
inline Integer pollard_brent(const Integer& n, unsigned c) {
    if (n % 2 == 0) return 2;
    Integer y = 2, x, ys, q = 1, g = 1;
    const std::size_t m = 64;
    std::size_t r = 1;
    auto f = [&](const Integer& v) { return (v * v + c) % n; };
    do {
        x = y;
        for (std::size_t i = 0; i < r; ++i) y = f(y);
        std::size_t k = 0;
        do {
            ys = y;
            for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = q * abs(Integer(x - y)) % n;
            }
            g = gcd(q, n);
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(abs(Integer(x - ys)), n);
        } while (g == 1);
    }
    return g;
}

inline void split_into(const Integer& n, std::map<Integer, int>& acc) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++acc[n];
        return;
    }
    if (is_square(n)) {
        Integer r = isqrt(n);
        split_into(r, acc);
        split_into(r, acc);
        return;
    }
    for (unsigned c = 1;; ++c) {
        Integer d = pollard_brent(n, c);
        if (d != n && d != 1) {
            split_into(d, acc);
            split_into(n / d, acc);
            return;
        }
    }
}

}  // namespace detail

/// Complete prime factorization: trial division by small primes, then Pollard-Brent
/// with fixed polynomials x^2 + c (c = 1, 2, ...), so output is run-to-run stable.
inline Factorization factorize(const Integer& n) {
    if (n == 0) throw DomainError("factorize: zero has no factorization");
    Factorization out;
    out.sign = n < 0 ? -1 : 1;
    Integer m = abs(n);
    std::map<Integer, int> acc;
    static const std::vector<std::uint32_t> small = primes_up_to(10000);
    for (std::uint32_t p : small) {
        if (Integer(p) * p > m) break;
        int e = strip_prime(m, p);
        if (e > 0) acc[p] += e;
    }
    if (m > 1) detail::split_into(m, acc);
    for (auto& [p, e] : acc) out.factors.emplace_back(p, e);
    return out;
}

/// Least primitive root modulo an odd prime p.
inline std::uint64_t least_primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    Factorization f = factorize(Integer(p - 1));
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [q, e] : f.factors) {
            if (pow_mod(g, (p - 1) / q.convert_to<std::uint64_t>(), p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw DomainError("least_primitive_root: modulus is not prime");
}

}  // namespace bmo
