#include <gtest/gtest.h>

#include <random>

#include "bmo/curves/elkies.hpp"

using namespace bmo;

namespace {

// N(r/s) = (a^4 + 16 b^4) / b^4 with a = r^2 + rs + 3s^2, b = r^2 + rs + s^2
std::pair<Integer, Integer> numerator_pair(std::int64_t r, std::int64_t s) {
    Integer R(r), S(s);
    return {R * R + R * S + 3 * S * S, R * R + R * S + S * S};
}

}  // namespace

TEST(SqrtMod, AgreesWithSquaring) {
    for (std::uint64_t p : {3, 5, 17, 97, 113, 65537, 1000000007}) {
        for (std::uint64_t a = 1; a < 60; ++a) {
            if (legendre_symbol(a, p) != 1) continue;
            Integer r = sqrt_mod(a, p);
            EXPECT_EQ(r * r % p, Integer(a % p)) << a << " mod " << p;
        }
    }
    EXPECT_THROW(sqrt_mod(3, 7), DomainError);
}

TEST(Fibre, KnownExamples) {
    auto inf = fibre_at_infinity();
    EXPECT_EQ(inf.N, Rational(17));
    EXPECT_EQ(inf.N0, 17);
    EXPECT_EQ(inf.A, 1);
    EXPECT_EQ(inf.B, 1);
    auto f0 = fibre(Rational(0));
    EXPECT_EQ(f0.N, Rational(97));
    EXPECT_EQ(f0.A, 3);
    EXPECT_EQ(f0.B, 1);
    auto f1 = fibre(Rational(1));
    EXPECT_EQ(f1.N, Rational(Integer(1921), Integer(81)));
    EXPECT_EQ(f1.N0, 1921);
    EXPECT_EQ(f1.A, 5);
    EXPECT_EQ(f1.B, 3);
}

TEST(Fibre, MatchesIntegerParametrization) {
    for (std::int64_t s = 1; s <= 6; ++s) {
        for (std::int64_t r = -6; r <= 6; ++r) {
            if (std::gcd(r, s) != 1) continue;
            auto f = fibre(Rational(Integer(r), Integer(s)));
            auto [a, b] = numerator_pair(r, s);
            EXPECT_EQ(f.N, Rational(ipow(a, 4) + 16 * ipow(b, 4), ipow(b, 4)));
            EXPECT_EQ(f.N * f.M.pow(4), Rational(f.N0));
            EXPECT_EQ(ipow(f.A, 4) + 16 * ipow(f.B, 4), f.N0);
            EXPECT_EQ(f.A % 2, 1);
            EXPECT_EQ(f.B % 2, 1);
            EXPECT_EQ(gcd(f.A, f.B), 1);
            EXPECT_EQ(f.N0 % 16, 1);
        }
    }
}

TEST(Fibre, RepresentationNotFoundIsLoud) {
    EXPECT_THROW(elkies_representation(33), RepresentationNotFound);
    EXPECT_EQ(elkies_representation(97), (std::pair<Integer, Integer>{3, 1}));
}

TEST(LocalSolvability, KnownExamples) {
    for (auto t : {std::optional<Rational>{}, std::optional<Rational>{Rational(1)}, std::optional<Rational>{Rational(0)}}) {
        auto f = fibre(t);
        auto r = local_solvability_report(f);
        EXPECT_TRUE(r.everywhere()) << f.t_str();
        bool saw_two = false;
        for (const auto& pv : r.places) {
            if (pv.v == Place::finite(2)) saw_two = true;
            EXPECT_TRUE(pv.solvable) << f.t_str() << " at " << pv.v.str();
        }
        EXPECT_TRUE(saw_two);
    }
    auto r1921 = local_solvability_report(fibre(Rational(1)));
    std::set<Place> places;
    for (const auto& pv : r1921.places) places.insert(pv.v);
    EXPECT_TRUE(places.count(Place::finite(17)));
    EXPECT_TRUE(places.count(Place::finite(113)));
    EXPECT_EQ(97 % 16, 1);
}

TEST(QuarticRep, KnownExamples) {
    auto r17 = quartic_rep(17);
    EXPECT_EQ(r17.a, 1);
    EXPECT_EQ(r17.b, 1);
    EXPECT_TRUE(r17.symbol.is_minus_one());
    EXPECT_EQ(pow_mod(2, 4, 17), 16u);
    auto r113 = quartic_rep(113);
    EXPECT_EQ(r113.a, 7);
    EXPECT_EQ(r113.b, 2);
    EXPECT_TRUE(r113.symbol.is_one());
    auto r97 = quartic_rep(97);
    EXPECT_EQ(r97.a, 9);
    EXPECT_EQ(r97.b, 1);
    EXPECT_EQ(pow_mod(2, 24, 97), 96u);
    EXPECT_TRUE(r97.symbol.is_minus_one());
    EXPECT_THROW(quartic_rep(13), DomainError);
    EXPECT_THROW(quartic_rep(25), DomainError);
}

TEST(QuarticRep, GaussCriterionSweep) {
    std::size_t n = 0;
    for (auto p : primes_up_to(20000)) {
        if (p % 8 != 1) continue;
        auto r = quartic_rep(p);
        EXPECT_EQ(r.a * r.a + 16 * r.b * r.b, Integer(p));
        bool plus_one = pow_mod(2, (p - 1) / 4, p) == 1;
        EXPECT_EQ(plus_one, r.b % 2 == 0) << p;
        ++n;
    }
    EXPECT_GT(n, 500u);
}

TEST(NormIdentity, ExamplesAndSweep) {
    EXPECT_TRUE(norm_identity_check(1, 1, 7, 2));
    EXPECT_EQ(compose_reps({1, 1}, {7, 2}), (std::pair<Integer, Integer>{-25, 9}));
    EXPECT_EQ(Integer(17 * 113), Integer(625 + 16 * 81));
    EXPECT_TRUE(norm_identity_check(5, 0, 3, 0));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        auto r = [&]() { return Integer(static_cast<std::int64_t>(rng() % 2000001) - 1000000); };
        EXPECT_TRUE(norm_identity_check(r(), r(), r(), r()));
    }
}

TEST(NormIdentity, ParityOfBIsAdditive) {
    std::vector<std::uint32_t> ps;
    for (auto p : primes_up_to(5000)) {
        if (p % 8 == 1) ps.push_back(p);
    }
    std::mt19937_64 rng(9);
    for (int i = 0; i < 300; ++i) {
        auto a = quartic_rep(ps[rng() % ps.size()]), b = quartic_rep(ps[rng() % ps.size()]);
        auto c = compose_reps({a.a, a.b}, {b.a, b.b});
        EXPECT_EQ(abs(c.second) % 2, (a.b + b.b) % 2);
        EXPECT_EQ(c.first * c.first + 16 * c.second * c.second, a.p * b.p);
    }
}

TEST(ObstructionParity, KnownExamples) {
    auto p17 = obstruction_parity(fibre_at_infinity());
    EXPECT_EQ(p17.count, 1u);
    EXPECT_EQ(p17.invariant, InvariantValue::half());
    EXPECT_EQ(p17.verdict, Verdict::obstructed);
    auto p1921 = obstruction_parity(fibre(Rational(1)));
    EXPECT_EQ(p1921.count, 1u);
    EXPECT_EQ(p1921.invariant, InvariantValue::half());
    ASSERT_EQ(p1921.primes.size(), 2u);
    EXPECT_TRUE(p1921.primes[1].symbol.is_one());  // 113 drops out
    auto p97 = obstruction_parity(fibre(Rational(0)));
    EXPECT_EQ(p97.count, 1u);
    EXPECT_EQ(p97.invariant, InvariantValue::half());
}

TEST(FamilyScan, SmallList) {
    auto rep = family_scan({std::nullopt, Rational(0), Rational(1)});
    EXPECT_EQ(rep.entries.size(), 3u);
    EXPECT_EQ(rep.obstructed, 3u);
    EXPECT_EQ(rep.solvable, 3u);
    EXPECT_TRUE(rep.all_ok());
    EXPECT_TRUE(family_scan({}).entries.empty());
}

TEST(FamilyScan, HeightFourIsObstructedWithOddCount) {
    std::vector<std::optional<Rational>> ts;
    for (const auto& t : rationals_of_height(4)) ts.emplace_back(t);
    auto rep = family_scan(ts);
    EXPECT_TRUE(rep.all_ok());
    for (const auto& e : rep.entries) {
        EXPECT_TRUE(e.error.empty()) << e.t << ": " << e.error;
        EXPECT_EQ(e.parity.count % 2, 1u) << e.t;
        EXPECT_EQ(e.parity.exponent_sum % 2, 1) << e.t;
    }
}

TEST(FamilyScan, CompositionReachesTheSquares) {
    for (const auto& t : rationals_of_height(3)) {
        auto f = fibre(t);
        auto c = composition_check(f);
        EXPECT_TRUE(c.parity_matches) << t.str();
        EXPECT_TRUE(c.reaches_A2_B2) << t.str();
    }
}

TEST(FamilyScan, RationalsOfHeight) {
    auto r = rationals_of_height(2);
    // -2, -1, -1/2, 0, 1/2, 1, 2
    EXPECT_EQ(r.size(), 7u);
    EXPECT_EQ(r.front(), Rational(-2));
}
