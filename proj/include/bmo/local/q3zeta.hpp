#pragma once

#include "bmo/arith/f3.hpp"
#include "bmo/tower/cyclo.hpp"

namespace bmo {

/// Element of Q_3(zeta_3) = Q_3[zeta]/(zeta^2 + zeta + 1).
using Q3Zeta = Cyclo<PadicNumber>;

namespace q3z {

inline Q3Zeta from_rational(const Rational& x, int precision) {
    PadicNumber a = PadicNumber::from_rational(x, 3, precision);
    return Q3Zeta(a, ring_from_int<PadicNumber>(0, a));
}

inline Q3Zeta from_cyclo(const CycloElement& x, int precision) {
    auto emb = [precision](const Rational& c) {
        return c.is_zero() ? PadicNumber::zero(3, precision) : PadicNumber::from_rational(c, 3, precision);
    };
    return {emb(x.a()), emb(x.b())};
}

inline Q3Zeta one(int precision) { return from_rational(Rational(1), precision); }
inline Q3Zeta zeta(int precision) { return Q3Zeta::zeta(PadicNumber::from_integer(1, 3, precision)); }
/// The uniformizer pi = zeta - 1, with pi^2 = -3 zeta.
inline Q3Zeta pi(int precision) { return zeta(precision) - one(precision); }

/// v_pi(c0 + c1 zeta) = min(2 v(c0 + c1), 2 v(c1) + 1), since c0 + c1 zeta = (c0 + c1) + c1 pi.
inline int valuation(const Q3Zeta& x) {
    PadicNumber s = x.a() + x.b();
    if (s.is_zero() && x.b().is_zero())
        throw InsufficientPrecision("q3z::valuation: value indistinguishable from zero");
    // a zero-flagged part only bounds its valuation from below, which must not decide the minimum
    int vs = 2 * s.valuation(), vb = 2 * x.b().valuation() + 1;
    if (s.is_zero() && vs <= vb) throw InsufficientPrecision("q3z::valuation: not enough digits");
    if (x.b().is_zero() && vb <= vs) throw InsufficientPrecision("q3z::valuation: not enough digits");
    return std::min(vs, vb);
}

/// Residue of a pi-adic integer in F_3 = Z_3[zeta]/(pi): (c0 + c1) mod 3.
inline int residue(const Q3Zeta& x) {
    if (valuation(x) < 0) throw DomainError("q3z::residue: element is not integral");
    PadicNumber s = x.a() + x.b();
    return static_cast<int>(s.residue(1).convert_to<long long>());
}

/// tau: zeta -> zeta^2.
inline Q3Zeta tau(const Q3Zeta& x) { return x.conj(); }

/// The generators pi, zeta, 1 + pi^2, 1 + pi^3 of K^*/(K^*)^3 for K = Q_3(zeta_3).
inline std::array<Q3Zeta, 4> generators(int precision) {
    Q3Zeta p = pi(precision);
    Q3Zeta o = one(precision);
    return {p, zeta(precision), o + p * p, o + p * p * p};
}

/// Coordinates in F_3^4 of the class of x in K^*/(K^*)^3 with respect to generators().
///
/// Divide by pi^v, fix the sign so the unit is 1 mod pi, then peel off the digits at
/// levels 1, 2, 3 with zeta = 1 + pi, 1 + pi^2, 1 + pi^3. What remains lies in U_4,
/// which consists of cubes.
inline f3::Vec express(const Q3Zeta& x, int precision) {
    const int v = valuation(x);
    auto gens = generators(precision + 4);
    const Q3Zeta pin = pi(precision + 4);
    Q3Zeta u = x * pin.pow(-v);
    if (residue(u) == 2) u = -u;
    f3::Vec out{f3::norm3(v), 0, 0, 0};
    const Q3Zeta o = one(precision + 4);
    for (int level = 1; level <= 3; ++level) {
        Q3Zeta d = u - o;
        if (d.is_zero()) {
            if (std::min(d.a().absolute_precision(), d.b().absolute_precision()) < 2)
                throw InsufficientPrecision("q3z::express: unit known to too few digits");
            break;
        }
        if (valuation(d) < level) throw Error("q3z::express: unit is not in the expected filtration step");
        int digit = residue(d * pin.pow(-level));
        out[static_cast<std::size_t>(level)] = digit;
        if (digit != 0) u = u * gens[static_cast<std::size_t>(level)].pow(-digit);
    }
    if (!(u - o).is_zero() && valuation(u - o) < 4) throw Error("q3z::express: remainder is not in U_4");
    return out;
}

/// Product of generators raised to the coordinates of c.
inline Q3Zeta element_of_class(const f3::Vec& c, int precision) {
    auto gens = generators(precision);
    Q3Zeta r = one(precision);
    for (std::size_t i = 0; i < f3::kDim; ++i) r = r * gens[i].pow(f3::norm3(c[i]));
    return r;
}

}  // namespace q3z

}  // namespace bmo
