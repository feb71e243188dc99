#pragma once

#include <cstdint>

#include "bmo/arith/modint.hpp"
#include "bmo/arith/rational.hpp"
#include "bmo/padic/padic_number.hpp"

namespace bmo {

/// Embedding of small integers into a coefficient ring. Rings whose elements carry a
/// runtime context (modulus, prime and precision) take it from `like`.
template <class T>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static Rational from_int(long long n, const Rational&) { return Rational(n); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
};

template <>
struct RingTraits<std::int64_t> {
    static std::int64_t from_int(long long n, const std::int64_t&) { return n; }
    static bool is_zero(std::int64_t x) { return x == 0; }
};

template <>
struct RingTraits<ModInt> {
    static ModInt from_int(long long n, const ModInt& like) { return ModInt(n, like.modulus()); }
    static bool is_zero(const ModInt& x) { return x.is_zero(); }
};

template <>
struct RingTraits<PadicNumber> {
    static PadicNumber from_int(long long n, const PadicNumber& like) {
        int prec = std::max(like.absolute_precision(), like.precision());
        if (n == 0) return PadicNumber::zero(like.prime(), std::max(prec, 1));
        return padic_constant(n, like);
    }
    static bool is_zero(const PadicNumber& x) { return x.is_zero(); }
};

template <class T>
T ring_from_int(long long n, const T& like) {
    return RingTraits<T>::from_int(n, like);
}

}  // namespace bmo
