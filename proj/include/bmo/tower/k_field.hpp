#pragma once

#include <vector>

#include "bmo/tower/radical.hpp"

namespace bmo {

/// Element of K = Q(zeta_3)(epsilon), epsilon^3 = 6.
using KElement = Radical<CycloElement>;

inline constexpr long long kEpsilonCube = 6;

inline CycloElement cyclo(long long a, long long b = 0) { return {Rational(a), Rational(b)}; }

inline KElement k_element(const CycloElement& c0, const CycloElement& c1, const CycloElement& c2) {
    return KElement({c0, c1, c2}, cyclo(kEpsilonCube));
}

inline KElement k_scalar(const CycloElement& c) { return KElement::scalar(c, 3, cyclo(kEpsilonCube)); }
inline KElement epsilon() { return KElement::root(3, cyclo(kEpsilonCube)); }

/// gamma = zeta eps^2 + (2 zeta + 1) eps + 2 zeta, of norm -10.
inline KElement gamma_element() { return k_element(cyclo(0, 2), cyclo(1, 2), cyclo(0, 1)); }

/// sigma on a radical extension of a ring containing zeta: r -> zeta r, coefficients fixed.
template <class T>
Radical<Cyclo<T>> sigma(const Radical<Cyclo<T>>& x) {
    const auto& c = x.coeffs();
    std::vector<Cyclo<T>> out;
    Cyclo<T> z = Cyclo<T>::zeta(c[0].a());
    Cyclo<T> zi = Cyclo<T>::from_int(1, c[0].a());
    for (const auto& ci : c) {
        out.push_back(ci * zi);
        zi = zi * z;
    }
    return Radical<Cyclo<T>>(std::move(out), x.radicand());
}

/// x sigma(x) sigma^2(x), projected to the coefficient ring (the r-parts vanish).
template <class T>
Cyclo<T> norm_by_conjugates(const Radical<Cyclo<T>>& x) {
    auto s = sigma(x);
    auto n = x * s * sigma(s);
    for (std::size_t i = 1; i < n.degree(); ++i) {
        if (!n[i].is_zero()) throw Error("norm_by_conjugates: norm is not in the base field");
    }
    return n[0];
}

/// N_{K/k}(x), computed as the product of conjugates and by the closed formula; both must agree.
inline CycloElement norm_K_over_k(const KElement& x) {
    CycloElement a = norm_by_conjugates(x);
    CycloElement b = x.cubic_norm_formula();
    if (!(a == b)) throw Error("norm_K_over_k: conjugate product and closed formula disagree");
    return a;
}

/// All c0 + c1 eps + c2 eps^2 with c_i = x + y zeta, |x|, |y| <= H, of norm exactly -10.
inline std::vector<KElement> gamma_search(int bound) {
    if (bound < 0) throw DomainError("gamma_search: bound must be nonnegative");
    using C = Cyclo<std::int64_t>;
    std::vector<C> range;
    for (long long x = -bound; x <= bound; ++x) {
        for (long long y = -bound; y <= bound; ++y) range.emplace_back(x, y);
    }
    const C six(6, 0), thirtysix(36, 0), eighteen(18, 0), target(-10, 0);
    std::vector<KElement> out;
    for (const auto& a : range) {
        C a3 = a * a * a;
        for (const auto& b : range) {
            C b3 = b * b * b;
            C ab = a * b;
            for (const auto& c : range) {
                C n = a3 + six * b3 + thirtysix * (c * c * c) - eighteen * (ab * c);
                if (n == target) {
                    KElement g = k_element(cyclo(a.a(), a.b()), cyclo(b.a(), b.b()), cyclo(c.a(), c.b()));
                    if (!(norm_K_over_k(g) == cyclo(-10))) throw Error("gamma_search: candidate failed re-verification");
                    out.push_back(g);
                }
            }
        }
    }
    return out;
}

inline std::string to_string(const KElement& x) {
    std::string out;
    const char* basis[] = {"", "*eps", "*eps^2"};
    for (std::size_t i = 0; i < 3; ++i) {
        if (x[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(x[i]) + ")" + basis[i];
    }
    return out.empty() ? "0" : out;
}

}  // namespace bmo
