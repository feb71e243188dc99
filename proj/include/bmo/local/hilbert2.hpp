#pragma once

#include <map>
#include <set>

#include "bmo/arith/primes.hpp"
#include "bmo/local/invariant.hpp"
#include "bmo/padic/padic_number.hpp"
#include "bmo/padic/place.hpp"

namespace bmo {

struct HilbertValue {
    int sign = 1;
    InvariantValue inv;
};

namespace detail {

inline HilbertValue hilbert_from_sign(int s) { return {s, s < 0 ? InvariantValue::half() : InvariantValue::zero()}; }

/// Quadratic Hilbert symbol from the data a = p^alpha u, b = p^beta w (u, w units read mod 8 or mod p).
inline int hilbert2_units(std::uint64_t p, int alpha, std::uint64_t u, int beta, std::uint64_t w) {
    if (p == 2) {
        auto eps = [](std::uint64_t x) { return static_cast<int>(((x - 1) / 2) & 1); };
        auto omega = [](std::uint64_t x) { return static_cast<int>(((x * x - 1) / 8) & 1); };
        int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
        return (e & 1) ? -1 : 1;
    }
    auto leg = [p](std::uint64_t x) { return pow_mod(x, (p - 1) / 2, p) == 1 ? 1 : -1; };
    int s = 1;
    if ((alpha & 1) && (beta & 1) && (p % 4 == 3)) s = -s;
    if ((beta & 1) && leg(u) < 0) s = -s;
    if ((alpha & 1) && leg(w) < 0) s = -s;
    return s;
}

inline std::uint64_t unit_residue(const PadicNumber& x) {
    const std::uint64_t m = x.prime() == 2 ? 8 : x.prime();
    return mod_floor(x.unit(), Integer(m)).convert_to<std::uint64_t>();
}

}  // namespace detail

/// (a, b)_p for p-adic a, b (closed formula).
inline HilbertValue hilbert2(const PadicNumber& a, const PadicNumber& b) {
    if (a.prime() != b.prime()) throw DomainError("hilbert2: operands at different primes");
    if (a.is_zero() || b.is_zero()) throw InsufficientPrecision("hilbert2: operand indistinguishable from zero");
    const int need = a.prime() == 2 ? 3 : 1;
    if (a.precision() < need || b.precision() < need) throw InsufficientPrecision("hilbert2: units known too coarsely");
    int alpha = ((a.valuation() % 2) + 2) % 2, beta = ((b.valuation() % 2) + 2) % 2;
    return detail::hilbert_from_sign(
        detail::hilbert2_units(a.prime(), alpha, detail::unit_residue(a), beta, detail::unit_residue(b)));
}

/// (a, b)_infinity from the signs of real numbers.
inline HilbertValue hilbert2_real(int sign_a, int sign_b) {
    if (sign_a == 0 || sign_b == 0) throw DomainError("hilbert2: zero argument");
    return detail::hilbert_from_sign(sign_a < 0 && sign_b < 0 ? -1 : 1);
}

/// (a, b)_v for nonzero rationals.
inline HilbertValue hilbert2(const Rational& a, const Rational& b, const Place& v) {
    if (a.is_zero() || b.is_zero()) throw DomainError("hilbert2: zero argument");
    if (v.is_infinite()) return hilbert2_real(a.sign(), b.sign());
    return hilbert2(PadicNumber::from_rational(a, v.prime(), 4), PadicNumber::from_rational(b, v.prime(), 4));
}

/// Places where (a, b)_v can be nontrivial: primes dividing 2ab, then the real place.
inline std::vector<Place> bad_places(const Rational& a, const Rational& b) {
    std::set<Integer> primes{2};
    for (const Integer& n : {a.num(), a.den(), b.num(), b.den()}) {
        for (const auto& [p, e] : factorize(n).factors) primes.insert(p);
    }
    std::vector<Place> out;
    for (const auto& p : primes) out.push_back(Place::finite(p.convert_to<std::uint64_t>()));
    out.push_back(Place::infinite());
    return out;
}

struct ProductFormulaReport {
    std::map<Place, InvariantValue> contributions;
    InvariantValue total;
};

/// Sum of inv_v (a, b)_v over all places; always 0 by reciprocity.
inline ProductFormulaReport product_formula_check(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) throw DomainError("product_formula_check: zero argument");
    ProductFormulaReport r;
    for (const auto& v : bad_places(a, b)) {
        auto h = hilbert2(a, b, v);
        r.contributions[v] = h.inv;
        r.total += h.inv;
    }
    return r;
}

}  // namespace bmo
