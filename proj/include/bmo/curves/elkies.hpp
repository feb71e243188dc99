#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bmo/curves/reichardt_lind.hpp"

namespace bmo {

/// Fibre 2Y^2 = Z^4 - N(t) of the family N(t) = (1 + 2/(1 + t + t^2))^4 + 16.
struct ElkiesFibre {
    std::optional<Rational> t;  ///< nullopt is t = infinity
    Rational N;
    Integer N0;  ///< fourth-power-free, N * M^4 = N0
    Rational M;
    Integer A, B;  ///< N0 = A^4 + 16 B^4, A and B odd, coprime, positive

    std::string t_str() const { return t ? t->str() : "inf"; }
};

/// p = a^2 + 16 b^2 with a odd, a, b > 0.
struct QuarticRep {
    Integer p, a, b;
    QuarticSymbol symbol;  ///< (2/p)_4
    bool b_even() const { return b % 2 == 0; }
    /// (2/p)_4 = +1 exactly when b is even.
    bool gauss_criterion() const { return symbol.is_one() == b_even(); }
};

inline Rational elkies_N(const std::optional<Rational>& t) {
    if (!t) return Rational(17);
    Rational d = *t * *t + *t + Rational(1);
    if (d.is_zero()) throw DomainError("elkies: 1 + t + t^2 vanishes");
    Rational s = Rational(1) + Rational(2) / d;
    return s.pow(4) + Rational(16);
}

/// (A, B) with N0 = A^4 + 16 B^4, A, B odd and coprime, by exhaustive search over B <= (N0/16)^(1/4).
inline std::pair<Integer, Integer> elkies_representation(const Integer& N0) {
    Integer bmax = iroot4(N0 / 16);
    for (Integer b = 1; b <= bmax; b += 2) {
        Integer rest = N0 - 16 * ipow(b, 4);
        if (rest <= 0) break;
        if (!is_fourth_power(rest)) continue;
        Integer a = iroot4(rest);
        if (a % 2 == 1 && gcd(a, b) == 1) return {a, b};
    }
    throw RepresentationNotFound("elkies: N0 = " + to_string(N0) + " is not A^4 + 16 B^4 with A, B odd coprime");
}

inline ElkiesFibre fibre(const std::optional<Rational>& t) {
    ElkiesFibre f;
    f.t = t;
    f.N = elkies_N(t);
    if (f.N.num() % 2 == 0) throw Error("elkies: N(t) has an even numerator");
    auto qf = quartic_free_part(f.N);
    f.N0 = qf.n0;
    f.M = qf.m;
    if (f.N0 % 16 != 1) throw Error("elkies: N0 is not 1 mod 16");
    auto [a, b] = elkies_representation(f.N0);
    f.A = a;
    f.B = b;
    return f;
}

inline ElkiesFibre fibre_at_infinity() { return fibre(std::nullopt); }
inline ElkiesFibre fibre(const Rational& t) { return fibre(std::optional<Rational>(t)); }

struct PlaceVerdict {
    Place v = Place::infinite();
    bool solvable = false;
    std::string method;
};

struct SolvabilityReport {
    std::vector<PlaceVerdict> places;
    std::size_t good_prime_bound = 0;  ///< good primes above this rely on smooth reduction alone

    bool everywhere() const {
        for (const auto& p : places) {
            if (!p.solvable) return false;
        }
        return true;
    }
};

/// Local solvability of 2Y^2 = Z^4 - N0 at the real place, at 2, at each odd p | N0 and
/// directly at good primes up to `good_bound`.
inline SolvabilityReport local_solvability_report(const ElkiesFibre& fib, int precision = 20,
                                                  std::uint32_t good_bound = 50) {
    SolvabilityReport r;
    r.good_prime_bound = good_bound;
    r.places.push_back({Place::infinite(), fib.N0 > 0, "N0 > 0"});

    // N0 = 1 mod 16 is a fourth power in Q_2: the point (Y, Z) = (0, N0^(1/4)) on the projective curve
    auto z2 = padic_root(PadicNumber::from_integer(fib.N0, 2, precision + 4), 4, precision);
    bool two = fib.N0 % 16 == 1 && z2.has_value() && quartic_local_point(2, fib.N0, 2, precision).has_value();
    r.places.push_back({Place::finite(2), two, "N0 = 1 mod 16"});

    auto factors = factorize(fib.N0).factors;
    for (const auto& [p, e] : factors) {
        const std::uint64_t q = p.convert_to<std::uint64_t>();
        if (q == 2) continue;
        PlaceVerdict pv{Place::finite(q), false, "2y^2 = 1 mod p, Hensel"};
        if (q % 8 == 1) {
            // y^2 = 1/2 mod p makes N0 + 2y^2 = 1 mod p a fourth power
            Integer y = sqrt_mod(inverse_mod(Integer(2), p), p);
            auto z = padic_root(PadicNumber::from_integer(fib.N0 + 2 * y * y, q, precision + 4), 4, precision);
            pv.solvable = z.has_value() && y != 0;
        } else {
            pv.method = "p != 1 mod 8";
        }
        r.places.push_back(pv);
    }
    for (auto q : primes_up_to(good_bound)) {
        if (q == 2 || fib.N0 % q == 0) continue;
        bool ok = quartic_local_point(2, fib.N0, q, precision).has_value();
        r.places.push_back({Place::finite(q), ok, "residue search"});
    }
    return r;
}

/// The representation p = a^2 + 16 b^2 of a prime p = 1 mod 8, with the criterion checked.
inline QuarticRep quartic_rep(const Integer& p) {
    if (p % 8 != 1 || !is_prime(p)) throw DomainError("quartic_rep: need a prime p = 1 mod 8");
    QuarticRep r;
    r.p = p;
    r.symbol = quartic_residue_symbol(2, p);
    Integer bmax = isqrt(p / 16);
    for (Integer b = 1; b <= bmax; ++b) {
        Integer rest = p - 16 * b * b;
        Integer a = isqrt(rest);
        if (a * a == rest && a % 2 == 1) {
            r.a = a;
            r.b = b;
            if (!r.gauss_criterion()) throw Error("quartic_rep: criterion fails at p = " + to_string(p));
            return r;
        }
    }
    throw RepresentationNotFound("quartic_rep: no representation for p = " + to_string(p));
}

/// (a^2 + 16b^2)(c^2 + 16d^2) = (ac - 16bd)^2 + 16(ad + bc)^2.
inline bool norm_identity_check(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    Integer lhs = (a * a + 16 * b * b) * (c * c + 16 * d * d);
    Integer x = a * c - 16 * b * d, y = a * d + b * c;
    return lhs == x * x + 16 * y * y;
}

/// (x, y) with x^2 + 16 y^2 equal to the product of the two represented values.
inline std::pair<Integer, Integer> compose_reps(const std::pair<Integer, Integer>& r, const std::pair<Integer, Integer>& s) {
    return {r.first * s.first - 16 * r.second * s.second, r.first * s.second + r.second * s.first};
}

struct ParityPrime {
    Integer p;
    int exponent = 0;
    QuarticSymbol symbol;
};

struct ParityResult {
    std::size_t count = 0;     ///< #{p | N0 : v_p(N0) odd, (2/p)_4 = -1}
    int exponent_sum = 0;      ///< sum of v_p(N0) over p | N0 with (2/p)_4 = -1
    InvariantValue invariant;  ///< count * 1/2
    Verdict verdict = Verdict::inconclusive;
    std::vector<ParityPrime> primes;
};

inline ParityResult obstruction_parity(const ElkiesFibre& fib) {
    ParityResult r;
    for (const auto& [p, e] : factorize(fib.N0).factors) {
        if (p % 8 != 1) throw Error("obstruction_parity: prime factor " + to_string(p) + " of N0 is not 1 mod 8");
        ParityPrime pp{p, e, quartic_residue_symbol(2, p)};
        if (pp.symbol.is_minus_one()) {
            r.exponent_sum += e;
            if (e % 2 == 1) ++r.count;
        } else if (!pp.symbol.is_one()) {
            throw Error("obstruction_parity: (2/p)_4 is not +-1");
        }
        r.primes.push_back(pp);
    }
    r.invariant = static_cast<long long>(r.count) * InvariantValue::half();
    r.verdict = r.invariant == InvariantValue::zero() ? Verdict::unobstructed : Verdict::obstructed;
    return r;
}

/// The prime-level representations composed into N0 = x^2 + 16 y^2; y = sum of v_p b_p mod 2.
struct CompositionCheck {
    bool parity_matches = false;  ///< y mod 2 equals the sum of the factors' b parities
    bool reaches_A2_B2 = false;   ///< some sign choice gives (|x|, |y|) = (A^2, B^2)
};

inline CompositionCheck composition_check(const ElkiesFibre& fib) {
    std::vector<std::pair<Integer, Integer>> reps;
    int parity = 0;
    for (const auto& [p, e] : factorize(fib.N0).factors) {
        QuarticRep q = quartic_rep(p);
        for (int i = 0; i < e; ++i) {
            reps.emplace_back(q.a, q.b);
            parity += static_cast<int>(q.b % 2);
        }
    }
    CompositionCheck c;
    if (reps.size() > 16) throw DomainError("composition_check: too many prime factors");
    const Integer A2 = fib.A * fib.A, B2 = fib.B * fib.B;
    bool first = true;
    for (std::size_t mask = 0; mask < (std::size_t{1} << reps.size()); ++mask) {
        std::pair<Integer, Integer> acc{1, 0};
        for (std::size_t i = 0; i < reps.size(); ++i) {
            auto r = reps[i];
            if (mask >> i & 1) r.second = -r.second;
            acc = compose_reps(acc, r);
        }
        if (acc.first * acc.first + 16 * acc.second * acc.second != fib.N0) throw Error("composition_check: bad product");
        if (first) {
            c.parity_matches = static_cast<int>(abs(acc.second) % 2) == parity % 2;
            first = false;
        }
        if (abs(acc.first) == A2 && abs(acc.second) == B2) c.reaches_A2_B2 = true;
    }
    return c;
}

struct FibreEntry {
    std::string t;
    Integer N0, A, B;
    bool locally_solvable = false;
    ParityResult parity;
    std::string error;
};

struct FamilyScanReport {
    std::vector<FibreEntry> entries;
    std::size_t obstructed = 0;
    std::size_t solvable = 0;

    bool all_ok() const { return obstructed == entries.size() && solvable == entries.size(); }
};

inline FamilyScanReport family_scan(const std::vector<std::optional<Rational>>& ts, int precision = 20) {
    FamilyScanReport rep;
    for (const auto& t : ts) {
        FibreEntry e;
        e.t = t ? t->str() : "inf";
        try {
            ElkiesFibre f = fibre(t);
            e.N0 = f.N0;
            e.A = f.A;
            e.B = f.B;
            e.locally_solvable = local_solvability_report(f, precision).everywhere();
            e.parity = obstruction_parity(f);
            if (e.locally_solvable) ++rep.solvable;
            if (e.parity.verdict == Verdict::obstructed) ++rep.obstructed;
        } catch (const Error& ex) {
            e.error = ex.what();
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

/// All r/s with |r| <= h, 1 <= s <= h, gcd(r, s) = 1, in increasing order.
inline std::vector<Rational> rationals_of_height(std::int64_t h) {
    std::set<Rational> out;
    for (std::int64_t s = 1; s <= h; ++s) {
        for (std::int64_t r = -h; r <= h; ++r) {
            if (std::gcd(r, s) == 1) out.insert(Rational(Integer(r), Integer(s)));
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace bmo
