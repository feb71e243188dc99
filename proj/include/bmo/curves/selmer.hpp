#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bmo/arith/residue.hpp"
#include "bmo/local/cube_class_group.hpp"
#include "bmo/padic/hensel.hpp"
#include "bmo/tower/selmer_functions.hpp"

namespace bmo {

/// E: b^2 = a^3 - 24300 and E': v^2 = u^3 + 900.
enum class WeierstrassCurve { E, E_prime };

inline const char* to_string(WeierstrassCurve c) { return c == WeierstrassCurve::E ? "E" : "E'"; }

inline long long weierstrass_constant(WeierstrassCurve c) { return c == WeierstrassCurve::E ? -24300 : 900; }

/// Point on E or E'; on E' the fields a, b hold u, v.
template <class T>
struct WeierstrassPoint {
    WeierstrassCurve curve = WeierstrassCurve::E;
    bool infinity = true;
    T a{}, b{};

    static WeierstrassPoint at_infinity(WeierstrassCurve c) { return {c, true, T{}, T{}}; }
    static WeierstrassPoint affine(WeierstrassCurve c, T x, T y) { return {c, false, std::move(x), std::move(y)}; }
};

/// b^2 - a^3 - c for the curve's constant c.
template <class T>
T weierstrass_residual(const WeierstrassPoint<T>& pt) {
    if (pt.infinity) throw DomainError("weierstrass_residual: point at infinity");
    return pt.b * pt.b - pt.a * pt.a * pt.a - ring_from_int<T>(weierstrass_constant(pt.curve), pt.a);
}

/// Exact for Rational and ModInt; for PadicNumber the residual vanishes at its precision.
template <class T>
bool on_curve(const WeierstrassPoint<T>& pt) {
    return pt.infinity || RingTraits<T>::is_zero(weierstrass_residual(pt));
}

template <class T>
struct ProjectivePoint {
    T X, Y, Z;
};

/// Diagonal cubic c0 X^3 + c1 Y^3 + c2 Z^3.
struct DiagonalCubic {
    long long c0, c1, c2;
};

inline constexpr DiagonalCubic kSelmerCubic{3, 4, 5};
inline constexpr DiagonalCubic kJacobianCubic{1, 1, 60};

template <class T>
T cubic_residual(const DiagonalCubic& c, const ProjectivePoint<T>& pt) {
    const T& like = pt.X;
    return ring_from_int<T>(c.c0, like) * pt.X * pt.X * pt.X + ring_from_int<T>(c.c1, like) * pt.Y * pt.Y * pt.Y +
           ring_from_int<T>(c.c2, like) * pt.Z * pt.Z * pt.Z;
}

template <class T>
bool on_cubic(const DiagonalCubic& c, const ProjectivePoint<T>& pt) {
    if (RingTraits<T>::is_zero(pt.X) && RingTraits<T>::is_zero(pt.Y) && RingTraits<T>::is_zero(pt.Z)) return false;
    return RingTraits<T>::is_zero(cubic_residual(c, pt));
}

/// [A:B:C] on A^3 + B^3 + 60 C^3 = 0 to (a, b) = (-180 C/(A+B), 270 (A-B)/(A+B)) on E.
template <class T>
WeierstrassPoint<T> cubic_to_weierstrass(const ProjectivePoint<T>& pt) {
    if (!on_cubic(kJacobianCubic, pt)) throw DomainError("cubic_to_weierstrass: point is not on A^3 + B^3 + 60C^3 = 0");
    T s = pt.X + pt.Y;
    if (RingTraits<T>::is_zero(s)) return WeierstrassPoint<T>::at_infinity(WeierstrassCurve::E);
    T a = ring_from_int<T>(-180, s) * pt.Z / s;
    T b = ring_from_int<T>(270, s) * (pt.X - pt.Y) / s;
    return WeierstrassPoint<T>::affine(WeierstrassCurve::E, a, b);
}

template <class T>
struct IsogenyImage {
    WeierstrassPoint<T> point;
    bool kernel = false;  ///< u = 0: a nontrivial kernel point, sent to infinity
};

/// (u, v) -> ((u^3 + 3600)/u^2, v (u^3 - 7200)/u^3), E' -> E.
template <class T>
IsogenyImage<T> isogeny_map(const WeierstrassPoint<T>& pt) {
    if (pt.curve != WeierstrassCurve::E_prime) throw DomainError("isogeny_map: point is not on E'");
    if (pt.infinity) return {WeierstrassPoint<T>::at_infinity(WeierstrassCurve::E), false};
    const T& u = pt.a;
    if (RingTraits<T>::is_zero(u)) return {WeierstrassPoint<T>::at_infinity(WeierstrassCurve::E), true};
    T u2 = u * u, u3 = u2 * u;
    T a = (u3 + ring_from_int<T>(3600, u)) / u2;
    T b = pt.b * (u3 - ring_from_int<T>(7200, u)) / u3;
    return {WeierstrassPoint<T>::affine(WeierstrassCurve::E, a, b), false};
}

/// u^6 (b^2 - a^3 + 24300) = (v^2 - u^3 - 900)(u^3 - 7200)^2 as polynomials in u = X, v = Y.
inline bool isogeny_identity_symbolic() {
    using P = Poly<Rational>;
    const Rational one(1);
    P u = P::X(one), v = P::Y(one);
    P u3 = u * u * u;
    auto c = [](long long n) { return P::constant(Rational(n)); };
    P lhs = v * v * (u3 - c(7200)) * (u3 - c(7200)) - (u3 + c(3600)) * (u3 + c(3600)) * (u3 + c(3600)) +
            c(24300) * u3 * u3;
    P rhs = (v * v - u3 - c(900)) * (u3 - c(7200)) * (u3 - c(7200));
    return lhs == rhs;
}

/// All affine points of E'(F_p).
inline std::vector<WeierstrassPoint<ModInt>> e_prime_points(std::uint64_t p) {
    if (p <= 5 || !is_prime(p)) throw DomainError("e_prime_points: need a prime p > 5");
    std::vector<WeierstrassPoint<ModInt>> out;
    for (std::uint64_t x = 0; x < p; ++x) {
        ModInt u(static_cast<std::int64_t>(x), p);
        ModInt rhs = u.pow(3) + ModInt(900, p);
        if (rhs.is_zero()) {
            out.push_back(WeierstrassPoint<ModInt>::affine(WeierstrassCurve::E_prime, u, rhs));
            continue;
        }
        if (legendre_symbol(Integer(rhs.value()), Integer(p)) != 1) continue;
        ModInt v(sqrt_mod(Integer(rhs.value()), Integer(p)).convert_to<std::int64_t>(), p);
        out.push_back(WeierstrassPoint<ModInt>::affine(WeierstrassCurve::E_prime, u, v));
        out.push_back(WeierstrassPoint<ModInt>::affine(WeierstrassCurve::E_prime, u, -v));
    }
    return out;
}

/// All points [A:B:C] of A^3 + B^3 + 60 C^3 = 0 over F_p, normalized with the last nonzero coordinate 1.
inline std::vector<ProjectivePoint<ModInt>> jacobian_cubic_points(std::uint64_t p) {
    if (p <= 5 || !is_prime(p)) throw DomainError("jacobian_cubic_points: need a prime p > 5");
    std::vector<ProjectivePoint<ModInt>> out;
    const ModInt zero(0, p), one(1, p);
    for (std::uint64_t x = 0; x < p; ++x) {
        ModInt A(static_cast<std::int64_t>(x), p);
        for (std::uint64_t y = 0; y < p; ++y) {
            ProjectivePoint<ModInt> pt{A, ModInt(static_cast<std::int64_t>(y), p), one};
            if (on_cubic(kJacobianCubic, pt)) out.push_back(pt);
        }
        ProjectivePoint<ModInt> pt{A, one, zero};
        if (on_cubic(kJacobianCubic, pt)) out.push_back(pt);
    }
    return out;
}

struct IsogenySweepReport {
    std::vector<std::uint64_t> primes;
    std::size_t points = 0;
    std::size_t kernel_points = 0;
    std::size_t failures = 0;
    bool symbolic_identity = false;
    std::string first_failure;

    bool ok() const { return symbolic_identity && failures == 0 && points >= 1 && primes.size() >= 3; }
};

/// Images of `count` seeded random points of E'(F_p), p running over primes > 5 until enough points exist.
inline IsogenySweepReport isogeny_sweep(std::size_t count = 500, std::uint64_t seed = 0) {
    IsogenySweepReport rep;
    rep.symbolic_identity = isogeny_identity_symbolic();
    std::vector<WeierstrassPoint<ModInt>> pool;
    for (std::uint64_t p = 7; pool.size() < 2 * count || rep.primes.size() < 3; ++p) {
        if (!is_prime(p)) continue;
        auto pts = e_prime_points(p);
        pool.insert(pool.end(), pts.begin(), pts.end());
        rep.primes.push_back(p);
    }
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(count);
    for (const auto& pt : pool) {
        ++rep.points;
        auto img = isogeny_map(pt);
        if (img.kernel) ++rep.kernel_points;
        if (!on_curve(pt) || !on_curve(img.point)) {
            if (rep.first_failure.empty())
                rep.first_failure = "(" + std::to_string(pt.a.value()) + "," + std::to_string(pt.b.value()) + ") mod " +
                                    std::to_string(pt.a.modulus());
            ++rep.failures;
        }
    }
    return rep;
}

struct Q3Preimage {
    WeierstrassPoint<PadicNumber> point;  ///< on E'
    PadicNumber T;                        ///< u / a
};

namespace detail {

inline bool agrees_to(const PadicNumber& x, const PadicNumber& y, int precision) {
    PadicNumber d = x - y;
    return d.is_zero() ? d.absolute_precision() >= precision : d.valuation() >= precision;
}

}  // namespace detail

/// Preimage under the isogeny of a point of E(Q_3): T^3 - T^2 + 3600/a^3 = 0 by Hensel from T = 1,
/// u = T a and v = b u^3 / (u^3 - 7200). The result maps back to the input to `precision` digits.
inline Q3Preimage isogeny_preimage_Q3(const WeierstrassPoint<PadicNumber>& pt, int precision) {
    if (pt.curve != WeierstrassCurve::E) throw DomainError("isogeny_preimage_Q3: point is not on E");
    if (pt.infinity) return {WeierstrassPoint<PadicNumber>::at_infinity(WeierstrassCurve::E_prime), PadicNumber()};
    if (pt.a.prime() != 3) throw DomainError("isogeny_preimage_Q3: coordinates are not 3-adic");
    if (!on_curve(pt)) throw DomainError("isogeny_preimage_Q3: point is not on E");
    if (pt.a.is_zero() || pt.b.is_zero()) throw InsufficientPrecision("isogeny_preimage_Q3: coordinate indistinguishable from zero");
    // v(a^3) = min(v(b^2), 5) forces v(a^3) = v(b^2), a multiple of 6 that is at most 0
    const int va = pt.a.valuation();
    if (3 * va != 2 * pt.b.valuation() || va > 0)
        throw DomainError("isogeny_preimage_Q3: valuations contradict b^2 = a^3 - 24300");

    const PadicNumber a3 = pt.a.pow(3);
    const PadicNumber c = padic_constant(3600, a3) / a3;
    const int work = c.absolute_precision();
    const PadicPolynomial f{c, PadicNumber::zero(3, work + 8), PadicNumber::from_integer(-1, 3, work + 8),
                            PadicNumber::from_integer(1, 3, work + 8)};
    PadicNumber T = hensel_root(f, PadicNumber::from_integer(1, 3, 4), work);

    PadicNumber u = T * pt.a;
    PadicNumber u3 = u.pow(3);
    PadicNumber v = pt.b * u3 / (u3 - padic_constant(7200, u3));
    auto pre = WeierstrassPoint<PadicNumber>::affine(WeierstrassCurve::E_prime, u, v);

    auto img = isogeny_map(pre).point;
    if (img.infinity) throw Error("isogeny_preimage_Q3: preimage maps to infinity");
    bool a_ok = detail::agrees_to(img.a, pt.a, precision), b_ok = detail::agrees_to(img.b, pt.b, precision);
    if (!a_ok || !b_ok) {
        PadicNumber da = img.a - pt.a, db = img.b - pt.b;
        if ((!da.is_zero() && da.valuation() < precision) || (!db.is_zero() && db.valuation() < precision))
            throw NoConvergence("isogeny_preimage_Q3: preimage does not map back to the point");
        throw InsufficientPrecision("isogeny_preimage_Q3: input carries too few digits for the requested precision");
    }
    return {pre, T};
}

/// Points of E(Q_3) with a = a0 / 9^j, a0 = 1 mod 3, j in {0, 1}, and b the Hensel square root of a^3 - 24300.
inline std::vector<WeierstrassPoint<PadicNumber>> sample_E_Q3(std::size_t count, std::uint64_t seed, int precision) {
    std::mt19937_64 rng(seed);
    std::vector<WeierstrassPoint<PadicNumber>> out;
    while (out.size() < count) {
        long long k = static_cast<long long>(rng() % 200001) - 100000;
        Rational a(Integer(3 * k + 1));
        if (rng() % 2 == 1) a = a / Rational(9);
        PadicNumber pa = PadicNumber::from_rational(a, 3, precision + 12);
        PadicNumber rhs = pa.pow(3) - padic_constant(24300, pa);
        auto b = padic_sqrt(rhs, precision + 8);
        if (!b) throw Error("sample_E_Q3: a^3 - 24300 with a = 1 mod 3 is not a square");
        PadicNumber pb = rng() % 2 == 1 ? -*b : *b;
        out.push_back(WeierstrassPoint<PadicNumber>::affine(WeierstrassCurve::E, pa, pb));
    }
    return out;
}

struct RoundTripReport {
    std::size_t points = 0;
    std::size_t scaled_points = 0;  ///< v(a) < 0
    std::size_t failures = 0;
    int precision = 0;
    std::string first_failure;

    bool ok() const { return points > 0 && failures == 0; }
};

inline RoundTripReport preimage_round_trip(std::size_t count = 50, std::uint64_t seed = 0, int precision = 20) {
    RoundTripReport r;
    r.precision = precision;
    for (const auto& pt : sample_E_Q3(count, seed, precision)) {
        ++r.points;
        if (pt.a.valuation() < 0) ++r.scaled_points;
        try {
            auto pre = isogeny_preimage_Q3(pt, precision);
            if (!on_curve(pre.point)) throw Error("preimage is not on E'");
        } catch (const Error& e) {
            if (r.first_failure.empty()) r.first_failure = pt.a.str() + ": " + e.what();
            ++r.failures;
        }
    }
    return r;
}

/// The cube root of 10 in Q_3, by Hensel from 4; the other roots of x^3 - 10 are not in Q_3.
inline PadicNumber delta_Q3(int precision) {
    return hensel_root(std::vector<Integer>{-10, 0, 0, 1}, PadicNumber::from_integer(4, 3, 4), precision);
}

/// [0 : delta : -2] on 3X^3 + 4Y^3 + 5Z^3 = 0 over Q_3.
inline ProjectivePoint<PadicNumber> selmer_base_point(int precision) {
    PadicNumber d = delta_Q3(precision);
    return {PadicNumber::zero(3, precision), d, PadicNumber::from_integer(-2, 3, precision)};
}

/// F([0 : delta : -2]) in Q_3(zeta_3), from the symbolic value with delta embedded.
inline Q3Zeta F_value_Q3(int precision) {
    const int work = precision + 8;
    DeltaPoly f = evaluate_F_symbolic();
    Q3Zeta d = q3z::from_rational(Rational(0), work) + Q3Zeta(delta_Q3(work), PadicNumber::zero(3, work));
    Q3Zeta acc = q3z::from_cyclo(f[0], work), pw = d;
    for (std::size_t i = 1; i < 3; ++i) {
        acc = acc + q3z::from_cyclo(f[i], work) * pw;
        pw = pw * d;
    }
    return acc;
}

/// Class of (zeta - 1)(1 + (zeta - 1)^2).
inline f3::Vec expected_F_class(int precision = kCubicPrecision) {
    Q3Zeta pi = q3z::pi(precision);
    return q3z::express(pi * (q3z::one(precision) + pi * pi), precision);
}

/// Cube class of F([0 : delta : -2]) in Q_3(zeta_3)^* / cubes.
inline f3::Vec evaluate_F_local(int precision = kCubicPrecision) { return q3z::express(F_value_Q3(precision), precision); }

struct SurvivalReport {
    bool conjugate = false;  ///< zeta replaced by zeta^2 throughout
    f3::Vec F_class{};
    InvariantValue pair_2, pair_3, pair_60;  ///< (x, F) for x = 2, 3, 60
    bool class_60_nontrivial = false;
    bool F_in_ann_60 = false;
    std::size_t dim_ann_23 = 0, dim_ann_60 = 0;
    bool ann_23_is_tau_fixed = false;  ///< the minus part of H^1(Z/3) read through the mu_3 twist
    std::size_t dim_plus = 0, dim_minus = 0;
    std::optional<f3::Vec> witness;  ///< c in F + ann(60) with (2, c) = (3, c) = 0
    std::size_t witness_count = 0;

    bool ok() const {
        return !pair_2.is_zero() && class_60_nontrivial && F_in_ann_60 && dim_ann_23 == 2 && dim_ann_60 == 3 &&
               ann_23_is_tau_fixed && dim_plus == 2 && dim_minus == 2 && witness.has_value();
    }
};

inline bool same_subspace(const f3::Subspace& x, const f3::Subspace& y) {
    if (x.dim() != y.dim()) return false;
    for (const auto& b : x.basis()) {
        if (!y.contains(b)) return false;
    }
    return true;
}

/// Exact F_3 checks on the cube-class group of Q_3(zeta_3) for the class of F([0 : delta : -2]).
inline SurvivalReport survival_analysis(int precision = kCubicPrecision, std::uint64_t seed = 0, bool conjugate = false) {
    auto g = cube_class_group(precision, seed);
    SurvivalReport r;
    r.conjugate = conjugate;
    Q3Zeta F = F_value_Q3(precision);
    if (conjugate) F = q3z::tau(F);
    r.F_class = g->express(F);
    if (conjugate && r.F_class != f3::apply(g->tau_matrix(), evaluate_F_local(precision)))
        throw Error("survival_analysis: tau does not act on classes through its matrix");

    const f3::Vec c2 = g->express(Rational(2)), c3 = g->express(Rational(3)), c60 = g->express(Rational(60));
    r.pair_2 = g->symbol(c2, r.F_class);
    r.pair_3 = g->symbol(c3, r.F_class);
    r.pair_60 = g->symbol(c60, r.F_class);
    r.class_60_nontrivial = !f3::is_zero(c60);

    f3::Subspace ann60 = g->annihilator(f3::Subspace({c60}));
    f3::Subspace ann23 = g->annihilator(f3::Subspace({c2, c3}));
    r.F_in_ann_60 = ann60.contains(r.F_class);
    r.dim_ann_60 = ann60.dim();
    r.dim_ann_23 = ann23.dim();
    r.dim_plus = g->eigenspace(1).dim();
    r.dim_minus = g->eigenspace(-1).dim();
    r.ann_23_is_tau_fixed = same_subspace(ann23, g->eigenspace(1));

    for (const auto& e : ann60.elements()) {
        f3::Vec c = f3::add(r.F_class, e);
        if (g->pair(c2, c) != 0 || g->pair(c3, c) != 0) continue;
        ++r.witness_count;
        if (!r.witness) r.witness = c;
    }
    if (!r.witness) throw NoWitness("survival_analysis: no class of F + ann(60) pairs trivially with 2 and 3");
    return r;
}

}  // namespace bmo
