#pragma once

#include <optional>
#include <vector>

#include "bmo/padic/padic_number.hpp"

namespace bmo {

/// Coefficients low degree first.
using PadicPolynomial = std::vector<PadicNumber>;

inline PadicNumber evaluate(const PadicPolynomial& f, const PadicNumber& x) {
    if (f.empty()) throw DomainError("evaluate: empty polynomial");
    PadicNumber acc = f.back();
    for (auto it = f.rbegin() + 1; it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline PadicPolynomial derivative(const PadicPolynomial& f) {
    PadicPolynomial d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(padic_constant(static_cast<long long>(i), f[i]) * f[i]);
    if (d.empty()) d.push_back(PadicNumber::zero(f.front().prime(), f.front().absolute_precision()));
    return d;
}

inline PadicPolynomial to_padic_polynomial(const std::vector<Integer>& coeffs, std::uint64_t p, int precision) {
    PadicPolynomial f;
    for (const auto& c : coeffs) f.push_back(PadicNumber::from_integer(c, p, precision));
    return f;
}

/// Newton-Hensel lifting of an approximate root a of f.
///
/// Requires v(f(a)) > 2 v(f'(a)). Returns r with v(f(r)) >= target and
/// v(r - a) >= v(f(a)) - v(f'(a)); r carries `target` absolute digits.
inline PadicNumber hensel_root(const PadicPolynomial& f, const PadicNumber& a, int target) {
    if (f.size() < 2) throw DomainError("hensel_root: polynomial of degree < 1");
    const PadicPolynomial df = derivative(f);
    PadicNumber fa = evaluate(f, a);
    PadicNumber dfa = evaluate(df, a);
    if (dfa.is_zero()) throw NoConvergence("hensel_root: derivative vanishes at the approximation");
    const int k = dfa.valuation();
    const int e = fa.valuation();  // absolute precision when fa is zero-flagged
    if (e <= 2 * k) throw NoConvergence("hensel_root: Newton condition v(f(a)) > 2 v(f'(a)) fails");

    int coeff_precision = INT_MAX;
    for (const auto& c : f) coeff_precision = std::min(coeff_precision, c.absolute_precision());
    if (coeff_precision < target + k) throw InsufficientPrecision("hensel_root: coefficients carry too few digits");

    const int working = std::max(target, coeff_precision - k);
    PadicNumber x = a.lifted(std::max(target + 2 * k + 4, a.absolute_precision()));
    for (int iter = 0; iter < 256; ++iter) {
        PadicNumber fx = evaluate(f, x);
        if (fx.is_zero() || fx.valuation() >= target + k + 1) break;
        PadicNumber dfx = evaluate(df, x);
        if (dfx.is_zero() || dfx.valuation() != k)
            throw InsufficientPrecision("hensel_root: lost track of the derivative valuation");
        // Newton is self-correcting: the step only needs the digits the coefficients support
        x = (x - fx / dfx).lifted(working);
        if (x.absolute_precision() < target) throw InsufficientPrecision("hensel_root: precision collapsed");
    }
    PadicNumber r = x.truncated(target);
    PadicNumber fr = evaluate(f, r);
    if (!fr.is_zero() && fr.valuation() < target) throw InsufficientPrecision("hensel_root: did not reach target");
    PadicNumber step = r - a;
    if (!step.is_zero() && step.valuation() < std::min(e - k, target))
        throw NoConvergence("hensel_root: root drifted away from the approximation");
    return r;
}

inline PadicNumber hensel_root(const std::vector<Integer>& f, const PadicNumber& a, int target) {
    // integer coefficients are exact: give them every digit the iteration can use
    const int precision = 2 * target + std::max(a.absolute_precision(), 0) + 16;
    return hensel_root(to_padic_polynomial(f, a.prime(), precision), a, target);
}

/// n-th root of x in Q_p when one exists, with `target` absolute digits (capped by the input).
inline std::optional<PadicNumber> padic_root(const PadicNumber& x, int n, int target) {
    if (x.is_zero()) throw InsufficientPrecision("padic_root: value indistinguishable from zero");
    if (x.valuation() % n != 0) return std::nullopt;
    const std::uint64_t p = x.prime();
    const int k = static_cast<int>(valuation(Integer(n), Integer(p)));
    // a start modulo p^m satisfying the Newton condition decides solvability
    const int m = 2 * k + 1;
    const Integer& pm = prime_power(p, m);
    if (x.precision() < m) throw InsufficientPrecision("padic_root: unit known to too few digits");
    const int unit_target = std::min(std::max(target - x.valuation() / n, 1), x.precision() - k);
    PadicNumber u = PadicNumber::from_unit(p, 0, x.unit(), x.precision());
    PadicPolynomial f;
    f.push_back(-u);
    for (int i = 1; i < n; ++i) f.push_back(PadicNumber::zero(p, x.precision() + 8));
    f.push_back(padic_constant(1, u));
    for (Integer r = 1; r < pm; ++r) {
        if (r % p == 0) continue;
        PadicNumber a = PadicNumber::from_integer(r, p, m + 8);
        PadicNumber fa = evaluate(f, a);
        if (!fa.is_zero() && fa.valuation() < m) continue;
        PadicNumber root = hensel_root(f, a, unit_target);
        return root * PadicNumber::from_unit(p, x.valuation() / n, 1, std::max(root.precision(), 1));
    }
    return std::nullopt;
}

inline std::optional<PadicNumber> padic_sqrt(const PadicNumber& x, int target) { return padic_root(x, 2, target); }

}  // namespace bmo
