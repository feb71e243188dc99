#pragma once

#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bmo/arith/modint.hpp"
#include "bmo/local/hilbert2.hpp"
#include "bmo/local/norm_group.hpp"
#include "bmo/padic/hensel.hpp"

namespace bmo {

/// Twisted Reichardt-Lind curve ell Y^2 = Z^4 - p (projectively ell T^2 = A^2 - p B^2, AB = C^2).
struct TwistParams {
    Integer ell;
    std::uint64_t p = 0;

    /// Checks ell nonzero squarefree, p an odd prime not dividing ell.
    static TwistParams make(const Integer& ell, std::uint64_t p);
    std::string str() const { return "(" + to_string(ell) + ", " + std::to_string(p) + ")"; }
};

/// Jacobian of the Reichardt-Lind curve, recorded as documented constants.
namespace rl_jacobian {
inline constexpr const char* kEquation = "y^2 = x(x^2 + 17)";
inline constexpr const char* kCremonaLabel = "18496k1";
inline constexpr int kAInvariants[5] = {0, 0, 0, 17, 0};
inline constexpr std::uint64_t kConductor = 18496;  // 2^6 * 17^2
inline constexpr int kTorsionOrder = 2;
inline constexpr int kAnalyticRank = 0;
inline constexpr int kAnalyticShaOrder = 4;
}  // namespace rl_jacobian

inline bool is_squarefree(const Integer& n) {
    if (n == 0) return false;
    for (const auto& [q, e] : factorize(abs(n)).factors) {
        if (e > 1) return false;
    }
    return true;
}

inline TwistParams TwistParams::make(const Integer& ell, std::uint64_t p) {
    if (!is_squarefree(ell)) throw DomainError("TwistParams: ell must be nonzero and squarefree");
    if (p == 2 || !is_prime(p)) throw DomainError("TwistParams: p must be an odd prime");
    if (ell % Integer(p) == 0) throw DomainError("TwistParams: p divides ell");
    return {ell, p};
}

/// A point of ell y^2 = z^4 - p with y != 0 over Q_v; at the real place y is a double.
struct LocalPoint {
    Place v = Place::infinite();
    Rational z;
    PadicNumber y;
    double y_real = 0;
    int precision = 0;

    int y_sign() const { return y_real < 0 ? -1 : 1; }
    std::string str() const {
        std::string ys = v.is_infinite() ? std::to_string(y_real) : y.str();
        return "v=" + v.str() + " z=" + z.str() + " y=" + ys;
    }
};

enum class Verdict { obstructed, unobstructed, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::obstructed: return "obstructed";
        case Verdict::unobstructed: return "unobstructed";
        default: return "inconclusive";
    }
}

struct ObstructionReport {
    std::map<Place, InvariantSet> contributions;
    InvariantSet total;
    Verdict verdict = Verdict::inconclusive;
    std::vector<InvariantValue> sampled_totals;  ///< sum of local invariants of each sampled adelic point
};

namespace detail {

/// Residue cells z = z0 mod q^k on which (z^4 - p)/ell is a nonzero square in Q_q.
struct CellSearch {
    std::vector<std::pair<Integer, int>> cells;
    bool at_infinity = false;  ///< ell is a square in Q_q, so points with v(z) < 0 exist
    bool undecided = false;    ///< cells remained open at the level bound
};

inline int rl_level_bound(const Integer& ell, const Integer& d, std::uint64_t q) {
    Integer n = 4 * ell * ell * d;
    return 2 * valuation(abs(n), Integer(q)) + 6;
}

/// Breadth-first search over z in Z_q for ell y^2 = z^4 - d. A cell z0 mod q^k is decided once
/// k >= v(z0^4 - d) + e (e = 3 at q = 2, else 1): every z in it then has (z^4 - d)/ell in the
/// same square class.
inline CellSearch rl_cells(const Integer& ell, const Integer& d, std::uint64_t q, std::size_t max_cells) {
    CellSearch out;
    const Place v = Place::finite(q);
    out.at_infinity = power_class(Rational(ell), 2, v).is_nth_power;
    const int e = q == 2 ? 3 : 1;
    const int kmax = rl_level_bound(ell, d, q);
    const Integer Q(q);
    std::vector<Integer> frontier;
    for (std::uint64_t r = 0; r < q; ++r) frontier.emplace_back(r);
    Integer qk = Q;
    for (int k = 1; k <= kmax && !frontier.empty(); ++k) {
        std::vector<Integer> next;
        for (const auto& z0 : frontier) {
            Integer n = z0 * z0 * z0 * z0 - d;
            if (n != 0 && k >= valuation(n, Q) + e) {
                if (power_class(Rational(n, ell), 2, v).is_nth_power) {
                    out.cells.emplace_back(z0, k);
                    if (out.cells.size() >= max_cells) return out;
                }
                continue;
            }
            for (std::uint64_t t = 0; t < q; ++t) next.push_back(z0 + Integer(t) * qk);
        }
        frontier = std::move(next);
        qk *= Q;
    }
    out.undecided = !frontier.empty();
    return out;
}

inline LocalPoint rl_finite_point(const Integer& ell, const Integer& d, std::uint64_t q, const Rational& z,
                                  int precision) {
    Rational f = z.pow(4) - Rational(d);
    PadicNumber X = PadicNumber::from_rational(f / Rational(ell), q, precision + 4);
    auto y = padic_sqrt(X, precision);
    if (!y) throw Error("local_point: cell value is not a square");
    PadicNumber L = PadicNumber::from_rational(Rational(ell), q, precision + 4);
    PadicNumber diff = L * *y * *y - PadicNumber::from_rational(f, q, precision + 4);
    if (!diff.is_zero()) throw Error("local_point: lifted point fails the curve equation");
    LocalPoint pt;
    pt.v = Place::finite(q);
    pt.z = z;
    pt.y = *y;
    pt.precision = precision;
    return pt;
}

inline LocalPoint rl_real_point(const TwistParams& tw, const Rational& z, int y_sign) {
    double zd = z.to_double();
    double y2 = (zd * zd * zd * zd - static_cast<double>(tw.p)) / tw.ell.convert_to<double>();
    if (!(y2 > 0)) throw Error("local_point: real value is not positive");
    LocalPoint pt;
    pt.v = Place::infinite();
    pt.z = z;
    pt.y_real = y_sign * std::sqrt(y2);
    return pt;
}

/// A real z with (z^4 - p)/ell > 0.
inline Rational rl_real_z(const TwistParams& tw, std::mt19937_64& rng, bool randomize) {
    if (tw.ell > 0) {
        Integer z = iroot4(Integer(tw.p)) + 1;
        if (randomize) z += Integer(rng() % 20);
        return Rational(z);
    }
    // |z| < p^(1/4): take z = m/8 with m^4 < p 8^4
    Integer bound = iroot4(Integer(tw.p) * 4096);
    if (ipow(bound, 4) == Integer(tw.p) * 4096) bound -= 1;
    Integer m = randomize ? Integer(rng() % (bound.convert_to<std::uint64_t>() + 1)) : Integer(0);
    return Rational(m, 8);
}

}  // namespace detail

/// A Q_q point of ell y^2 = z^4 - d with y != 0, or nullopt when none exists.
inline std::optional<LocalPoint> quartic_local_point(const Integer& ell, const Integer& d, std::uint64_t q,
                                                     int precision = 20) {
    auto s = detail::rl_cells(ell, d, q, 1);
    if (!s.cells.empty()) return detail::rl_finite_point(ell, d, q, Rational(s.cells[0].first), precision);
    if (s.at_infinity) return detail::rl_finite_point(ell, d, q, Rational(Integer(1), Integer(q)), precision);
    if (s.undecided) throw InconclusivePrecision("local_point: search bound reached at " + std::to_string(q));
    return std::nullopt;
}

/// A local point at v with y != 0, or nullopt when none exists.
inline std::optional<LocalPoint> local_point(const TwistParams& tw, const Place& v, int precision = 20) {
    if (v.is_infinite()) {
        std::mt19937_64 rng(0);
        return detail::rl_real_point(tw, detail::rl_real_z(tw, rng, false), 1);
    }
    return quartic_local_point(tw.ell, Integer(tw.p), v.prime(), precision);
}

/// `count` seeded local points at v, spread over the residue cells that carry points.
inline std::vector<LocalPoint> sample_local_points(const TwistParams& tw, const Place& v, std::size_t count,
                                                   std::uint64_t seed, int precision = 20) {
    std::mt19937_64 rng(seed);
    std::vector<LocalPoint> out;
    if (v.is_infinite()) {
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(detail::rl_real_point(tw, detail::rl_real_z(tw, rng, true), rng() % 2 ? 1 : -1));
        }
        return out;
    }
    const std::uint64_t q = v.prime();
    const Integer P(tw.p);
    auto s = detail::rl_cells(tw.ell, P, q, 256);
    if (s.cells.empty() && !s.at_infinity) {
        if (s.undecided) throw InconclusivePrecision("sample_local_points: search bound reached at " + v.str());
        throw NoLocalPoint("sample_local_points: no point at " + v.str());
    }
    const Integer Q(q);
    for (std::size_t i = 0; i < count; ++i) {
        bool use_cell = !s.cells.empty() && (!s.at_infinity || rng() % 4 != 0);
        Rational z;
        if (use_cell) {
            const auto& [z0, k] = s.cells[rng() % s.cells.size()];
            z = Rational(z0 + Integer(rng() % 1000) * ipow(Q, static_cast<unsigned>(k)));
        } else {
            Integer u = Integer(rng() % 1000) * Q + 1 + Integer(rng() % (q - 1));
            z = Rational(u, ipow(Q, static_cast<unsigned>(1 + rng() % 2)));
        }
        out.push_back(detail::rl_finite_point(tw.ell, P, q, z, precision));
    }
    return out;
}

/// inv_v (y, p) at a local point.
inline InvariantValue rl_point_invariant(const TwistParams& tw, const LocalPoint& pt) {
    if (pt.v.is_infinite()) return hilbert2_real(pt.y_sign(), 1).inv;
    return hilbert2(pt.y, PadicNumber::from_integer(Integer(tw.p), pt.v.prime(), pt.precision)).inv;
}

/// Places dividing 2 ell p, then the real place.
inline std::vector<Place> rl_bad_places(const TwistParams& tw) {
    std::set<std::uint64_t> primes{2, tw.p};
    for (const auto& [q, e] : factorize(abs(tw.ell)).factors) primes.insert(q.convert_to<std::uint64_t>());
    std::vector<Place> out;
    for (auto q : primes) out.push_back(Place::finite(q));
    out.push_back(Place::infinite());
    return out;
}

/// Bad places together with every good prime up to `good_bound`.
inline std::vector<Place> rl_default_places(const TwistParams& tw, std::uint32_t good_bound = 30) {
    std::set<Place> out;
    for (const auto& v : rl_bad_places(tw)) out.insert(v);
    for (auto q : primes_up_to(good_bound)) out.insert(Place::finite(q));
    return {out.begin(), out.end()};
}

inline Verdict verdict_of(const InvariantSet& total) {
    return total.count(InvariantValue::zero()) ? Verdict::unobstructed : Verdict::obstructed;
}

/// Local invariants of the class (Y, p) at `points_per_place` sampled adelic points. Unsampled
/// good places contribute 0.
inline ObstructionReport point_obstruction(const TwistParams& tw, const std::vector<Place>& places, int precision = 20,
                                           std::uint64_t seed = 0, std::size_t points_per_place = 1) {
    if (points_per_place == 0) throw DomainError("point_obstruction: need at least one point per place");
    ObstructionReport r;
    r.sampled_totals.assign(points_per_place, InvariantValue::zero());
    r.total = {InvariantValue::zero()};
    for (const auto& v : places) {
        std::uint64_t key = v.is_infinite() ? 0 : v.prime();
        auto pts = sample_local_points(tw, v, points_per_place, seed * 1000003 + key, precision);
        InvariantSet s;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            InvariantValue x = rl_point_invariant(tw, pts[i]);
            s.insert(x);
            r.sampled_totals[i] += x;
        }
        r.contributions.emplace(v, s);
        r.total = sumset(r.total, s);
    }
    r.verdict = verdict_of(r.total);
    return r;
}

/// S_v = { inv_v (y, p) : ell y^2 lies in the norm group of Q_v(p^(1/4)) modulo fourth powers } at
/// v | 2 ell p, {0} at the real place (p > 0) and at all other places.
inline ObstructionReport forced_section_invariants(const TwistParams& tw, int precision = 20, std::uint64_t seed = 0) {
    ObstructionReport r;
    r.total = {InvariantValue::zero()};
    const Rational P{Integer(tw.p)};
    for (const auto& v : rl_bad_places(tw)) {
        InvariantSet s;
        if (v.is_infinite()) {
            s.insert(InvariantValue::zero());
        } else {
            const std::uint64_t q = v.prime();
            NormGroup g;
            try {
                g = local_norm_group(q, 4, P, precision, seed + q);
            } catch (const InsufficientPrecision& e) {
                throw InconclusivePrecision(std::string("forced_section_invariants: ") + e.what());
            }
            for (const auto& c : detail::all_power_classes(q, 2)) {
                Rational y = c.representative();
                if (g.contains(power_class(Rational(tw.ell) * y * y, 4, v).cls)) s.insert(hilbert2(y, P, v).inv);
            }
        }
        r.contributions.emplace(v, s);
        r.total = sumset(r.total, s);
    }
    r.verdict = verdict_of(r.total);
    return r;
}

struct TwistConditions {
    bool i = false;    ///< p > 0 odd prime, distinct from the prime factors of ell
    bool ii = false;   ///< p = 1 mod 4 and ell not a fourth power mod p
    bool iii = false;  ///< p a square mod every q | ell, and q = 3 mod 4 for odd q
    bool iv = false;   ///< p = 1 mod 8 and a Q_2 point
    std::string iv_route;  ///< "Y=0", "Y=2", "search" or "" when p != 1 mod 8

    bool all() const { return i && ii && iii && iv; }
};

inline TwistConditions twist_conditions(const Integer& ell, std::uint64_t p) {
    if (!is_squarefree(ell)) throw DomainError("twist_conditions: ell must be nonzero and squarefree");
    if (!is_prime(p)) throw DomainError("twist_conditions: p must be prime");
    TwistConditions c;
    const Integer P(p);
    auto ell_factors = factorize(abs(ell)).factors;
    c.i = p != 2 && ell % P != 0;
    c.ii = c.i && p % 4 == 1 && !quartic_residue_symbol(ell, P).is_one();
    c.iii = !ell_factors.empty();
    for (const auto& [q, e] : ell_factors) {
        if (q == 2) continue;
        if (q % 4 != 3 || P % q == 0 || legendre_symbol(P, q) != 1) c.iii = false;
    }
    if (c.i && p % 8 == 1) {
        if (p % 16 == 1) {
            c.iv = true;
            c.iv_route = "Y=0";
        } else if (mod_floor(P + 4 * ell, Integer(16)) == 1) {
            c.iv = true;
            c.iv_route = "Y=2";
        } else {
            c.iv = local_point(TwistParams::make(ell, p), Place::finite(2)).has_value();
            c.iv_route = "search";
        }
    }
    return c;
}

inline TwistConditions twist_conditions(const TwistParams& tw) { return twist_conditions(tw.ell, tw.p); }

/// Primes p <= p_max passing all twist conditions; each is re-checked by the forced-invariant argument.
inline std::vector<std::uint64_t> twist_search(const Integer& ell, std::uint64_t p_max, int precision = 20) {
    std::vector<std::uint64_t> out;
    if (p_max < 3) return out;
    for (std::uint64_t p : primes_up_to(static_cast<std::uint32_t>(p_max))) {
        if (!twist_conditions(ell, p).all()) continue;
        auto f = forced_section_invariants(TwistParams::make(ell, p), precision);
        if (f.verdict != Verdict::obstructed)
            throw Error("twist_search: " + TwistParams::make(ell, p).str() + " passes the conditions but is not obstructed");
        out.push_back(p);
    }
    return out;
}

struct DensityResult {
    std::size_t valid = 0;
    std::size_t primes = 0;  ///< all primes <= p_max, 2 included
    double ratio = 0;
    Rational predicted;
    std::vector<std::uint64_t> valid_primes;

    double relative_error() const { return std::abs(ratio - predicted.to_double()) / predicted.to_double(); }
};

/// Proportion of primes p <= p_max passing the twist conditions, against 1/2^(n+2) (ell even)
/// or 1/2^(n+4) (ell odd), n the number of prime factors of ell.
inline DensityResult density_experiment(const Integer& ell, std::uint64_t p_max) {
    if (!is_squarefree(ell)) throw DomainError("density_experiment: ell must be nonzero and squarefree");
    auto factors = factorize(abs(ell)).factors;
    if (factors.empty()) throw DomainError("density_experiment: ell needs at least one prime factor");
    for (const auto& [q, e] : factors) {
        if (q != 2 && q % 4 != 3) throw DomainError("density_experiment: odd prime factors of ell must be 3 mod 4");
    }
    const int n = static_cast<int>(factors.size());
    DensityResult d;
    d.predicted = Rational(1, ipow(Integer(2), static_cast<unsigned>(n + (ell % 2 == 0 ? 2 : 4))));
    for (std::uint64_t p : primes_up_to(static_cast<std::uint32_t>(p_max))) {
        ++d.primes;
        if (twist_conditions(ell, p).all()) {
            ++d.valid;
            d.valid_primes.push_back(p);
        }
    }
    d.ratio = d.primes == 0 ? 0.0 : static_cast<double>(d.valid) / static_cast<double>(d.primes);
    return d;
}

struct ExhaustiveResult {
    std::vector<std::array<Integer, 3>> solutions;  ///< (y, z0, z1) with y > 0, z0, z1 >= 0
    std::size_t pairs_checked = 0;
    std::size_t zero_y_excluded = 0;
};

/// Integer solutions of 2 y^2 = z0^4 - d z1^4 with gcd(z0, z1) = 1, y != 0, |z_i| <= bound.
/// Signs of y, z0, z1 are suppressed.
inline ExhaustiveResult exhaustive_search(std::int64_t bound, std::int64_t d = 17) {
    if (bound < 0) throw DomainError("exhaustive_search: bound must be nonnegative");
    if (bound > 20000) throw DomainError("exhaustive_search: bound too large for 128-bit search");
    ExhaustiveResult r;
    for (std::int64_t z0 = 0; z0 <= bound; ++z0) {
        const __int128 a = static_cast<__int128>(z0) * z0 * z0 * z0;
        for (std::int64_t z1 = 0; z1 <= bound; ++z1) {
            if (std::gcd(z0, z1) != 1) continue;
            ++r.pairs_checked;
            __int128 n = a - static_cast<__int128>(d) * z1 * z1 * z1 * z1;
            if (n < 0 || n % 2 != 0) continue;
            __int128 h = n / 2;
            auto y = static_cast<__int128>(std::sqrt(static_cast<long double>(h)));
            while (y * y > h) --y;
            while ((y + 1) * (y + 1) <= h) ++y;
            if (y * y != h) continue;
            if (y == 0) {
                ++r.zero_y_excluded;
                continue;
            }
            r.solutions.push_back({Integer(static_cast<std::int64_t>(y)), Integer(z0), Integer(z1)});
        }
    }
    return r;
}

struct SmoothnessReport {
    std::uint64_t p = 0;
    std::size_t points = 0;
    std::size_t singular = 0;
    bool ok() const { return singular == 0; }
};

/// Enumerates the F_p points of 2T^2 = A^2 - 17B^2, AB = C^2 in P^3 and tests the rank of
/// [[2A, -34B, 0, -4T], [B, A, -2C, 0]] at each.
inline SmoothnessReport model_smoothness_report(std::uint64_t p) {
    if (!is_prime(p) || 34 % p == 0) throw DomainError("model_smoothness_check: need a prime not dividing 34");
    SmoothnessReport r;
    r.p = p;
    auto m = [p](std::int64_t x) { return ModInt(x, p); };
    const auto ip = static_cast<std::int64_t>(p);
    // projective points normalized so that the first nonzero coordinate is 1
    for (int lead = 0; lead < 4; ++lead) {
        std::int64_t free_count = 1;
        for (int i = lead + 1; i < 4; ++i) free_count *= ip;
        for (std::int64_t idx = 0; idx < free_count; ++idx) {
            std::array<ModInt, 4> x{m(0), m(0), m(0), m(0)};
            x[static_cast<std::size_t>(lead)] = m(1);
            std::int64_t rest = idx;
            for (int i = lead + 1; i < 4; ++i) {
                x[static_cast<std::size_t>(i)] = m(rest % ip);
                rest /= ip;
            }
            const ModInt &A = x[0], &B = x[1], &C = x[2], &T = x[3];
            if (!(m(2) * T * T - (A * A - m(17) * B * B)).is_zero() || !(A * B - C * C).is_zero()) continue;
            ++r.points;
            std::array<ModInt, 4> r1{m(2) * A, m(-34) * B, m(0), m(-4) * T};
            std::array<ModInt, 4> r2{B, A, m(-2) * C, m(0)};
            bool rank2 = false;
            for (std::size_t i = 0; i < 4 && !rank2; ++i) {
                for (std::size_t j = i + 1; j < 4 && !rank2; ++j) rank2 = !(r1[i] * r2[j] - r1[j] * r2[i]).is_zero();
            }
            if (!rank2) ++r.singular;
        }
    }
    return r;
}

inline bool model_smoothness_check(std::uint64_t p) { return model_smoothness_report(p).ok(); }

}  // namespace bmo
