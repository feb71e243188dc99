#pragma once

#include <map>
#include <random>
#include <set>

#include "bmo/padic/power_class.hpp"
#include "bmo/tower/radical.hpp"

namespace bmo {

/// Image of the norm map of Q_p[r]/(r^m - d) in Q_p^* / (Q_p^*)^m.
struct NormGroup {
    std::uint64_t p = 0;
    int m = 2;
    Rational d;
    bool split = false;   ///< d is an m-th power in Q_p
    bool kummer = false;  ///< mu_m in Q_p and r^m - d irreducible: a cyclic field extension of degree m
    std::set<PowerClass> classes;
    std::size_t ambient_order = 0;
    std::size_t samples = 0;

    std::size_t index() const { return ambient_order / classes.size(); }
    bool contains(const PowerClass& c) const { return classes.count(c) == 1; }
};

namespace detail {

inline bool has_roots_of_unity(std::uint64_t p, int m) {
    if (m == 2) return true;
    return (p - 1) % static_cast<std::uint64_t>(m) == 0;
}

/// All classes of Q_p^*/(Q_p^*)^m, as the closure of classes of p and small units.
inline std::set<PowerClass> all_power_classes(std::uint64_t p, int m) {
    std::set<PowerClass> out;
    Place v = Place::finite(p);
    Integer bound = prime_power(p, p == 2 ? 5 : (p == 3 ? 3 : 1));
    for (int e = 0; e < m; ++e) {
        for (Integer u = 1; u < bound; ++u) {
            if (u % p == 0) continue;
            out.insert(power_class(Rational(u * ipow(Integer(p), e)), m, v).cls);
            out.insert(power_class(Rational(-u * ipow(Integer(p), e)), m, v).cls);
        }
    }
    return out;
}

/// Smallest subgroup containing `group` and c (group is assumed to be a subgroup).
inline bool insert_generator(std::set<PowerClass>& group, std::map<PowerClass, Rational>& reps, const PowerClass& c,
                             const Place& v) {
    if (group.count(c)) return false;
    std::set<PowerClass> frontier(group.begin(), group.end());
    for (;;) {
        std::set<PowerClass> next;
        for (const auto& g : frontier) {
            Rational prod = reps.at(g) * c.representative();
            PowerClass h = power_class(prod, c.n, v).cls;
            if (!group.count(h) && !next.count(h)) {
                next.insert(h);
                reps.emplace(h, h.representative());
            }
        }
        if (next.empty()) break;
        group.insert(next.begin(), next.end());
        frontier = std::move(next);
    }
    return true;
}

inline Integer random_padic_integer(std::mt19937_64& rng, std::uint64_t p) {
    // valuation skewed towards 0, unit part with a few random digits
    int e = static_cast<int>(rng() % 4 == 0 ? rng() % 4 : 0);
    Integer u = Integer(rng() % 100003) - 50001;
    if (u == 0) u = 1;
    return u * ipow(Integer(p), static_cast<unsigned>(e));
}

}  // namespace detail

inline constexpr int kStableSamples = 100;
inline constexpr int kMaxNormSamples = 20000;

/// Norm group of Q_p[r]/(r^m - d), by sampling norms of random elements until the generated
/// subgroup is unchanged for kStableSamples consecutive samples. For a cyclic Kummer
/// field extension the index must equal m, otherwise InsufficientPrecision is raised.
inline NormGroup local_norm_group(std::uint64_t p, int m, const Rational& d, int precision, std::uint64_t seed) {
    if (m < 2 || m > 4) throw DomainError("local_norm_group: degree must be 2, 3 or 4");
    if (d.is_zero()) throw DomainError("local_norm_group: radicand must be nonzero");
    if (precision < 4) throw InsufficientPrecision("local_norm_group: precision below 4 digits");
    const Place v = Place::finite(p);
    auto class_of = [&](const Rational& x) { return power_class(PadicNumber::from_rational(x, p, precision), m).cls; };
    NormGroup g;
    g.p = p;
    g.m = m;
    g.d = d;
    g.split = power_class(d, m, v).is_nth_power;
    bool irreducible = true;
    for (int q : {2, 3}) {
        if (m % q == 0 && power_class(d, q, v).is_nth_power) irreducible = false;
    }
    g.kummer = detail::has_roots_of_unity(p, m) && irreducible;
    auto ambient = detail::all_power_classes(p, m);
    g.ambient_order = ambient.size();
    if (g.split) {
        g.classes = ambient;
        return g;
    }

    std::map<PowerClass, Rational> reps;
    PowerClass identity = power_class(Rational(1), m, v).cls;
    g.classes.insert(identity);
    reps.emplace(identity, Rational(1));

    // the algebra is defined over Q; integer-coefficient elements are dense in it
    Integer dnum = d.num() * ipow(d.den(), static_cast<unsigned>(m - 1));  // r' = den * r has r'^m = dnum
    std::mt19937_64 rng(seed);
    auto add_norm = [&](const std::vector<Integer>& coeffs) {
        std::vector<Rational> c(coeffs.begin(), coeffs.end());
        Radical<Rational> y(c, Rational(dnum));
        Rational n = y.norm();
        ++g.samples;
        if (n.is_zero()) return false;
        return detail::insert_generator(g.classes, reps, class_of(n), v);
    };
    std::vector<Integer> gen(static_cast<std::size_t>(m), 0);
    gen[1] = 1;
    add_norm(gen);
    int stable = 0;
    while (stable < kStableSamples) {
        if (static_cast<int>(g.samples) > kMaxNormSamples)
            throw InsufficientPrecision("local_norm_group: norm subgroup did not stabilize");
        std::vector<Integer> c(static_cast<std::size_t>(m));
        for (auto& x : c) x = rng() % 3 == 0 ? Integer(0) : detail::random_padic_integer(rng, p);
        bool zero = true;
        for (const auto& x : c) zero = zero && x == 0;
        if (zero) continue;
        stable = add_norm(c) ? 0 : stable + 1;
    }
    if (g.kummer && g.index() != static_cast<std::size_t>(m))
        throw InsufficientPrecision("local_norm_group: norm index differs from the extension degree");
    return g;
}

/// Whether x is a norm from Q_p[r]/(r^m - d).
inline bool is_local_norm(const Rational& x, std::uint64_t p, int m, const Rational& d, int precision = kDefaultPrecision,
                          std::uint64_t seed = 0) {
    if (x.is_zero()) throw DomainError("is_local_norm: zero argument");
    NormGroup g = local_norm_group(p, m, d, precision, seed);
    return g.contains(power_class(x, m, Place::finite(p)).cls);
}

}  // namespace bmo
