#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bmo/arith/primes.hpp"
#include "bmo/tower/k_field.hpp"
#include "bmo/tower/poly.hpp"

namespace bmo {

using KPoly = Poly<KElement>;

/// The linear forms L_i = 2Y + zeta^i eps X and the resolvent U = num / den on 3X^3 + 4Y^3 + 5Z^3 = 0:
///   num = L0 L1 + gamma Z L1 + gamma sigma(gamma) Z^2,  den = L0 L1.
struct CurveFunctions {
    KElement gamma;
    KPoly l0, l1, l2, num, den;

    explicit CurveFunctions(const KElement& g) : gamma(g) {
        const KElement one = k_scalar(cyclo(1));
        KPoly X = KPoly::X(one), Y = KPoly::Y(one), Z = KPoly::Z(one);
        KPoly two_y = Y * k_scalar(cyclo(2));
        l0 = two_y + X * epsilon();
        l1 = two_y + X * (epsilon() * k_scalar(cyclo(0, 1)));
        l2 = two_y + X * (epsilon() * k_scalar(cyclo(-1, -1)));
        num = l0 * l1 + Z * l1 * gamma + Z * Z * (gamma * sigma(gamma));
        den = l0 * l1;
    }
};

inline KPoly sigma(const KPoly& f) {
    return f.map_coefficients([](const KElement& c) { return sigma(c); });
}

/// Curve polynomial 3X^3 + 4Y^3 + 5Z^3 with rational coefficients.
inline Poly<Rational> selmer_cubic() {
    using P = Poly<Rational>;
    return P::term(Rational(3), {3, 0, 0}) + P::term(Rational(4), {0, 3, 0}) + P::term(Rational(5), {0, 0, 3});
}

/// F_p in which zeta_3, 6^{1/3} and 10^{1/3} all exist, with chosen images.
struct FiniteFieldEmbedding {
    std::uint64_t p = 0;
    ModInt zeta, eps, delta;

    ModInt embed(const CycloElement& c) const { return ModInt::from_rational(c.a(), p) + ModInt::from_rational(c.b(), p) * zeta; }
    ModInt embed(const KElement& x) const {
        ModInt acc(0, p), e(1, p);
        for (std::size_t i = 0; i < 3; ++i) {
            acc = acc + embed(x[i]) * e;
            e = e * eps;
        }
        return acc;
    }
};

namespace detail {

inline std::optional<ModInt> cube_root_mod(std::int64_t a, std::uint64_t p) {
    for (std::uint64_t x = 1; x < p; ++x) {
        if (ModInt(static_cast<std::int64_t>(x), p).pow(3) == ModInt(a, p)) return ModInt(static_cast<std::int64_t>(x), p);
    }
    return std::nullopt;
}

}  // namespace detail

/// The first `count` primes p >= start with p = 1 mod 3 and 6, 10 cubes mod p.
inline std::vector<FiniteFieldEmbedding> verification_fields(std::size_t count, std::uint64_t start = 61) {
    std::vector<FiniteFieldEmbedding> out;
    for (std::uint64_t p = start; out.size() < count; ++p) {
        if (!is_prime(p) || p % 3 != 1) continue;
        auto e = detail::cube_root_mod(6, p), d = detail::cube_root_mod(10, p);
        if (!e || !d) continue;
        ModInt g(static_cast<std::int64_t>(least_primitive_root(p)), p);
        out.push_back({p, g.pow((p - 1) / 3), *e, *d});
    }
    return out;
}

/// Affine points (x, y, 1) of 3X^3 + 4Y^3 + 5Z^3 = 0 over F_p (p = 1 mod 3), in a seeded random order.
inline std::vector<std::array<ModInt, 3>> selmer_points(std::uint64_t p, std::size_t limit, std::uint64_t seed) {
    std::vector<std::int64_t> cube_root(p, -1);
    for (std::uint64_t x = 0; x < p; ++x) cube_root[mul_mod(mul_mod(x, x, p), x, p)] = static_cast<std::int64_t>(x);
    std::vector<std::array<ModInt, 3>> pts;
    const ModInt one(1, p), inv4 = ModInt(4, p).inverse();
    const ModInt zeta = ModInt(static_cast<std::int64_t>(least_primitive_root(p)), p).pow((p - 1) / 3);
    for (std::uint64_t x = 0; x < p; ++x) {
        // 4Y^3 = -(3X^3 + 5) on the chart Z = 1
        ModInt X(static_cast<std::int64_t>(x), p);
        ModInt rhs = -(ModInt(3, p) * X.pow(3) + ModInt(5, p)) * inv4;
        std::int64_t y = cube_root[rhs.value()];
        if (y < 0) continue;
        ModInt Y(y, p);
        if (Y.is_zero()) {
            pts.push_back({X, Y, one});
            continue;
        }
        for (int k = 0; k < 3; ++k) {
            pts.push_back({X, Y, one});
            Y = Y * zeta;
        }
    }
    std::mt19937_64 rng(seed);
    std::shuffle(pts.begin(), pts.end(), rng);
    if (pts.size() > limit) pts.resize(limit);
    return pts;
}

struct IdentityCheck {
    std::uint64_t p = 0;
    std::size_t points_checked = 0;
    std::size_t points_excluded = 0;
    bool b_holds = true;
    bool c_holds = true;
    bool norm_one_holds = true;  ///< N((2Y + eps X) / (gamma Z)) = 1 at every point
    std::string first_failure;
};

struct IdentityReport {
    bool a_norm_form = false;      ///< N(2Y + eps X) = 8Y^3 + 6X^3, symbolically
    bool a_curve_relation = false;  ///< 8Y^3 + 6X^3 + 10Z^3 = 2 (3X^3 + 4Y^3 + 5Z^3)
    std::vector<IdentityCheck> fields;
    bool negative_control_detected = false;  ///< gamma + 1 breaks the identities somewhere

    bool all_hold() const {
        bool ok = a_norm_form && a_curve_relation && negative_control_detected;
        for (const auto& f : fields) ok = ok && f.b_holds && f.c_holds && f.norm_one_holds;
        return ok;
    }
};

/// Pointwise check of sigma(U)/U = (2Y + eps X)/(gamma Z) and F = N(U) = sigma^2(gamma)/gamma U^3 L0/L2.
inline IdentityCheck check_identities_at(const CurveFunctions& fn, const FiniteFieldEmbedding& ff,
                                         const std::vector<std::array<ModInt, 3>>& pts) {
    IdentityCheck r;
    r.p = ff.p;
    auto emb = [&ff](const KElement& c) { return ff.embed(c); };
    const KPoly snum = sigma(fn.num), sden = sigma(fn.den);
    const KPoly s2num = sigma(snum), s2den = sigma(sden);
    const ModInt g = ff.embed(fn.gamma), sg = ff.embed(sigma(fn.gamma)), s2g = ff.embed(sigma(sigma(fn.gamma)));
    for (const auto& pt : pts) {
        const auto& [x, y, z] = pt;
        ModInt num = fn.num.evaluate(emb, x, y, z), den = fn.den.evaluate(emb, x, y, z);
        ModInt n1 = snum.evaluate(emb, x, y, z), d1 = sden.evaluate(emb, x, y, z);
        ModInt n2 = s2num.evaluate(emb, x, y, z), d2 = s2den.evaluate(emb, x, y, z);
        ModInt l0 = fn.l0.evaluate(emb, x, y, z), l1 = fn.l1.evaluate(emb, x, y, z), l2 = fn.l2.evaluate(emb, x, y, z);
        if (den.is_zero() || d1.is_zero() || d2.is_zero() || l2.is_zero() || z.is_zero() || g.is_zero()) {
            ++r.points_excluded;
            continue;
        }
        ++r.points_checked;
        std::string where = "(" + std::to_string(x.value()) + "," + std::to_string(y.value()) + "," +
                            std::to_string(z.value()) + ") mod " + std::to_string(ff.p);
        // (b) sigma(num) gamma Z den - num (2Y + eps X) sigma(den) = 0
        if (!(n1 * g * z * den - num * l0 * d1).is_zero()) {
            if (r.b_holds && r.first_failure.empty()) r.first_failure = "(b) at " + where;
            r.b_holds = false;
        }
        // (c) N(U) = sigma^2(gamma)/gamma * U^3 * L0/L2
        ModInt u = num / den;
        ModInt lhs = (num * n1 * n2) / (den * d1 * d2);
        ModInt rhs = s2g / g * u * u * u * l0 / l2;
        if (!(lhs == rhs)) {
            if (r.first_failure.empty()) r.first_failure = "(c) at " + where;
            r.c_holds = false;
        }
        // N(w) = 1 for w = L0 / (gamma Z)
        if (!(l0 * l1 * l2 == g * sg * s2g * z * z * z)) {
            if (r.first_failure.empty()) r.first_failure = "norm one at " + where;
            r.norm_one_holds = false;
        }
    }
    return r;
}

inline IdentityReport curve_identity_suite(std::uint64_t seed = 0, std::size_t points_per_field = 60,
                                           std::size_t field_count = 3) {
    IdentityReport rep;
    CurveFunctions fn(gamma_element());
    // (a) symbolically
    KPoly n = fn.l0 * sigma(fn.l0) * sigma(sigma(fn.l0));
    KPoly expected = KPoly::term(k_scalar(cyclo(8)), {0, 3, 0}) + KPoly::term(k_scalar(cyclo(6)), {3, 0, 0});
    rep.a_norm_form = n == expected;
    using P = Poly<Rational>;
    P lhs = P::term(Rational(8), {0, 3, 0}) + P::term(Rational(6), {3, 0, 0}) + P::term(Rational(10), {0, 0, 3});
    rep.a_curve_relation = lhs == selmer_cubic() * Rational(2);

    CurveFunctions perturbed(gamma_element() + k_scalar(cyclo(1)));
    for (const auto& ff : verification_fields(field_count)) {
        auto pts = selmer_points(ff.p, points_per_field, seed + ff.p);
        rep.fields.push_back(check_identities_at(fn, ff, pts));
        auto neg = check_identities_at(perturbed, ff, pts);
        if (!neg.c_holds || !neg.norm_one_holds) rep.negative_control_detected = true;
    }
    return rep;
}

/// Polynomials in delta, delta^3 = 10, over k and over K.
using DeltaPoly = Radical<CycloElement>;
using KDeltaPoly = Radical<KElement>;

inline constexpr long long kDeltaCube = 10;

/// F([0 : delta : -2]) = N_{K/k}((delta^2 - gamma delta + gamma sigma(gamma)) / delta^2) in k[delta]/(delta^3 - 10).
inline DeltaPoly evaluate_F_symbolic(const KElement& gamma = gamma_element()) {
    const KElement ten = k_scalar(cyclo(kDeltaCube));
    KDeltaPoly y({gamma * sigma(gamma), -gamma, k_scalar(cyclo(1))}, ten);
    auto sig = [](const KDeltaPoly& v) { return v.map_coefficients([](const KElement& c) { return sigma(c); }); };
    KDeltaPoly s1 = sig(y);
    KDeltaPoly n = y * s1 * sig(s1);
    std::vector<CycloElement> out;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 1; j < 3; ++j) {
            if (!n[i][j].is_zero()) throw Error("evaluate_F_symbolic: norm left the base field");
        }
        // N(delta^2) = delta^6 = 100
        out.push_back(n[i][0] * CycloElement(Rational(1, 100), Rational(0)));
    }
    return DeltaPoly(out, cyclo(kDeltaCube));
}

/// -(9/5) zeta delta^2 + ((9/5) zeta + 36/5) delta - (81/5) zeta + 9
inline DeltaPoly expected_F_value() {
    return DeltaPoly({CycloElement(Rational(9), Rational(-81, 5)), CycloElement(Rational(36, 5), Rational(9, 5)),
                      CycloElement(Rational(0), Rational(-9, 5))},
                     cyclo(kDeltaCube));
}

inline std::string delta_to_string(const DeltaPoly& x) {
    std::string out;
    const char* basis[] = {"", "*delta", "*delta^2"};
    for (std::size_t i = 3; i-- > 0;) {
        if (x[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(x[i]) + ")" + basis[i];
    }
    return out.empty() ? "0" : out;
}

}  // namespace bmo
