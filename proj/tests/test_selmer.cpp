#include <gtest/gtest.h>

#include "bmo/curves/selmer.hpp"

using namespace bmo;

namespace {

constexpr int kPrec = 20;

ModInt mi(long long v, std::uint64_t p) { return ModInt(v, p); }

// b^2 - a^3 + 24300 with plain integer arithmetic mod p
long long e_residual_mod(long long a, long long b, long long p) {
    long long r = (b * b - a * a % p * a + 24300) % p;
    return (r + p) % p;
}

Q3Zeta embed(const CycloElement& c, int precision) { return q3z::from_cyclo(c, precision); }

// F([0 : delta : -2]) through the closed cubic norm formula in Q_3(zeta)[eps]/(eps^3 - 6)
Q3Zeta F_by_norm_formula(int precision) {
    const PadicNumber d = delta_Q3(precision);
    const Q3Zeta delta(d, PadicNumber::zero(3, precision));
    const KElement g = gamma_element();
    const KElement gs = g * sigma(g);
    std::vector<Q3Zeta> c;
    for (std::size_t i = 0; i < 3; ++i) {
        Q3Zeta v = embed(gs[i], precision) - embed(g[i], precision) * delta;
        if (i == 0) v = v + delta * delta;
        c.push_back(v);
    }
    Radical<Q3Zeta> y(c, q3z::from_rational(Rational(kEpsilonCube), precision));
    Q3Zeta n = y.cubic_norm_formula();
    return n * q3z::from_rational(Rational(1, 100), precision);
}

bool q3zeta_agree(const Q3Zeta& x, const Q3Zeta& y, int digits) {
    return detail::agrees_to(x.a(), y.a(), digits) && detail::agrees_to(x.b(), y.b(), digits);
}

}  // namespace

TEST(CubicToWeierstrass, OriginAndSmallField) {
    auto o = cubic_to_weierstrass(ProjectivePoint<Rational>{Rational(1), Rational(-1), Rational(0)});
    EXPECT_TRUE(o.infinity);
    auto p = cubic_to_weierstrass(ProjectivePoint<ModInt>{mi(1, 7), mi(3, 7), mi(0, 7)});
    ASSERT_FALSE(p.infinity);
    EXPECT_EQ(p.a, mi(0, 7));
    EXPECT_EQ(p.b, mi(5, 7));
    EXPECT_EQ(e_residual_mod(0, 5, 7), 0);
    EXPECT_THROW(cubic_to_weierstrass(ProjectivePoint<ModInt>{mi(1, 7), mi(1, 7), mi(1, 7)}), DomainError);
}

TEST(CubicToWeierstrass, AllPointsOverSmallFieldsLandOnE) {
    for (std::uint64_t p : {7, 13, 19, 31}) {
        auto pts = jacobian_cubic_points(p);
        ASSERT_FALSE(pts.empty());
        std::size_t at_infinity = 0;
        for (const auto& pt : pts) {
            auto w = cubic_to_weierstrass(pt);
            if (w.infinity) {
                ++at_infinity;
                continue;
            }
            EXPECT_EQ(e_residual_mod(static_cast<long long>(w.a.value()), static_cast<long long>(w.b.value()),
                                     static_cast<long long>(p)),
                      0)
                << p;
        }
        EXPECT_EQ(at_infinity, 1u) << p;
    }
}

TEST(Isogeny, SmallFieldExampleAndKernel) {
    auto pt = WeierstrassPoint<ModInt>::affine(WeierstrassCurve::E_prime, mi(3, 11), mi(5, 11));
    ASSERT_TRUE(on_curve(pt));
    auto img = isogeny_map(pt);
    EXPECT_FALSE(img.kernel);
    EXPECT_EQ(img.point.a, mi(7, 11));
    EXPECT_EQ(img.point.b, mi(10, 11));
    EXPECT_EQ(e_residual_mod(7, 10, 11), 0);

    auto k = isogeny_map(WeierstrassPoint<Rational>::affine(WeierstrassCurve::E_prime, Rational(0), Rational(30)));
    EXPECT_TRUE(k.kernel);
    EXPECT_TRUE(k.point.infinity);
    EXPECT_TRUE(on_curve(WeierstrassPoint<Rational>::affine(WeierstrassCurve::E_prime, Rational(0), Rational(30))));
    EXPECT_THROW(isogeny_map(WeierstrassPoint<Rational>::affine(WeierstrassCurve::E, Rational(1), Rational(1))),
                 DomainError);
}

TEST(Isogeny, SymbolicIdentityAndSweep) {
    EXPECT_TRUE(isogeny_identity_symbolic());
    auto rep = isogeny_sweep(500, 3);
    EXPECT_TRUE(rep.ok()) << rep.first_failure;
    EXPECT_EQ(rep.points, 500u);
    EXPECT_GE(rep.primes.size(), 3u);
    for (auto p : rep.primes) EXPECT_TRUE(p % 2 && p % 3 && p % 5);
}

TEST(Isogeny, SweepIsCheckedAgainstPlainArithmetic) {
    for (std::uint64_t p : {11, 13, 17}) {
        for (const auto& pt : e_prime_points(p)) {
            auto img = isogeny_map(pt);
            if (img.kernel) {
                EXPECT_EQ(pt.a.value(), 0u);
                continue;
            }
            EXPECT_EQ(e_residual_mod(static_cast<long long>(img.point.a.value()),
                                     static_cast<long long>(img.point.b.value()), static_cast<long long>(p)),
                      0);
        }
    }
}

TEST(IsogenyPreimage, UnitExample) {
    // a = 1: -24299 = 1 mod 3 is a square in Q_3
    PadicNumber a = PadicNumber::from_integer(1, 3, kPrec + 10);
    auto b = padic_sqrt(PadicNumber::from_integer(-24299, 3, kPrec + 10), kPrec + 8);
    ASSERT_TRUE(b.has_value());
    auto pre = isogeny_preimage_Q3(WeierstrassPoint<PadicNumber>::affine(WeierstrassCurve::E, a, *b), kPrec);
    EXPECT_EQ(pre.T.residue(2), 1);
    EXPECT_TRUE(detail::agrees_to(pre.point.a, pre.T, kPrec));
    EXPECT_TRUE(on_curve(pre.point));
    // T^3 - T^2 + 3600 vanishes
    PadicNumber t = pre.T;
    PadicNumber f = t.pow(3) - t * t + padic_constant(3600, t);
    EXPECT_TRUE(f.is_zero() || f.valuation() >= kPrec);
}

TEST(IsogenyPreimage, ScaledExample) {
    // a = 1/9: v(a^3) = v(b^2) = -6
    PadicNumber a = PadicNumber::from_rational(Rational(1, 9), 3, kPrec + 12);
    auto b = padic_sqrt(a.pow(3) - padic_constant(24300, a), kPrec + 8);
    ASSERT_TRUE(b.has_value());
    EXPECT_EQ(b->valuation(), -3);
    auto pre = isogeny_preimage_Q3(WeierstrassPoint<PadicNumber>::affine(WeierstrassCurve::E, a, *b), kPrec);
    EXPECT_EQ(pre.point.a.valuation(), -2);
    EXPECT_TRUE(on_curve(pre.point));
}

TEST(IsogenyPreimage, RoundTripOnFiftyPoints) {
    auto r = preimage_round_trip(50, 11, kPrec);
    EXPECT_TRUE(r.ok()) << r.first_failure;
    EXPECT_EQ(r.points, 50u);
    EXPECT_GT(r.scaled_points, 0u);
    EXPECT_LT(r.scaled_points, 50u);
    for (const auto& pt : sample_E_Q3(10, 4, kPrec)) {
        auto pre = isogeny_preimage_Q3(pt, kPrec);
        auto back = isogeny_map(pre.point).point;
        EXPECT_TRUE(detail::agrees_to(back.a, pt.a, kPrec));
        EXPECT_TRUE(detail::agrees_to(back.b, pt.b, kPrec));
    }
}

TEST(IsogenyPreimage, RejectsPointsOffTheCurve) {
    PadicNumber a = PadicNumber::from_integer(1, 3, 30), b = PadicNumber::from_integer(2, 3, 30);
    EXPECT_THROW(isogeny_preimage_Q3(WeierstrassPoint<PadicNumber>::affine(WeierstrassCurve::E, a, b), kPrec),
                 DomainError);
    auto inf = isogeny_preimage_Q3(WeierstrassPoint<PadicNumber>::at_infinity(WeierstrassCurve::E), kPrec);
    EXPECT_TRUE(inf.point.infinity);
}

TEST(EvaluateFLocal, DeltaAndBasePoint) {
    PadicNumber d = delta_Q3(30);
    EXPECT_EQ(d.residue(2), 4);
    EXPECT_TRUE(d.pow(3).agrees_with(PadicNumber::from_integer(10, 3, 30)));
    EXPECT_TRUE(f3::is_zero(q3z::express(q3z::from_rational(Rational(10), kCubicPrecision), kCubicPrecision)));
    EXPECT_TRUE(f3::is_zero(q3z::express(q3z::from_rational(Rational(-10), kCubicPrecision), kCubicPrecision)));
    EXPECT_TRUE(on_cubic(kSelmerCubic, selmer_base_point(30)));
    EXPECT_TRUE(on_cubic(kSelmerCubic, ProjectivePoint<Rational>{Rational(0), Rational(0), Rational(0)}) == false);
}

TEST(EvaluateFLocal, ValueMatchesNormFormula) {
    Q3Zeta f = F_value_Q3(kCubicPrecision);
    Q3Zeta g = F_by_norm_formula(kCubicPrecision + 8);
    EXPECT_TRUE(q3zeta_agree(f, g, kCubicPrecision));
}

TEST(EvaluateFLocal, ClassIsPiTimesOnePlusPiSquared) {
    f3::Vec expected{1, 0, 1, 0};
    EXPECT_EQ(evaluate_F_local(), expected);
    EXPECT_EQ(expected_F_class(), expected);
    EXPECT_EQ(q3z::express(F_by_norm_formula(kCubicPrecision + 8), kCubicPrecision), expected);
}

TEST(Survival, PaperStatements) {
    auto r = survival_analysis();
    EXPECT_FALSE(r.pair_2.is_zero());
    EXPECT_TRUE(r.F_in_ann_60);
    EXPECT_TRUE(r.pair_60.is_zero());
    EXPECT_TRUE(r.class_60_nontrivial);
    EXPECT_EQ(r.dim_ann_23, 2u);
    EXPECT_EQ(r.dim_ann_60, 3u);
    EXPECT_EQ(r.dim_plus, 2u);
    EXPECT_EQ(r.dim_minus, 2u);
    EXPECT_TRUE(r.ann_23_is_tau_fixed);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(r.ok());
}

TEST(Survival, WitnessCheckedByBruteForce) {
    auto g = cube_class_group();
    auto r = survival_analysis();
    const f3::Vec c2 = g->express(Rational(2)), c3 = g->express(Rational(3)), c60 = g->express(Rational(60));
    std::size_t count = 0, ann60 = 0;
    for (const auto& c : f3::all_vectors()) {
        if (g->pair(c60, c) == 0) ++ann60;
        f3::Vec diff = f3::add(c, f3::scale(2, r.F_class));
        if (g->pair(c60, diff) != 0) continue;
        if (g->pair(c2, c) == 0 && g->pair(c3, c) == 0) ++count;
    }
    EXPECT_EQ(ann60, 27u);
    EXPECT_EQ(count, r.witness_count);
    const f3::Vec w = *r.witness;
    EXPECT_EQ(g->pair(c2, w), 0);
    EXPECT_EQ(g->pair(c3, w), 0);
    EXPECT_EQ(g->pair(c60, f3::add(w, f3::scale(2, r.F_class))), 0);
}

TEST(Survival, ConjugateInvariance) {
    auto r = survival_analysis(kCubicPrecision, 0, false);
    auto c = survival_analysis(kCubicPrecision, 0, true);
    EXPECT_TRUE(c.ok());
    EXPECT_EQ(r.pair_2.is_zero(), c.pair_2.is_zero());
    EXPECT_EQ(r.pair_3.is_zero(), c.pair_3.is_zero());
    EXPECT_EQ(r.F_in_ann_60, c.F_in_ann_60);
    EXPECT_EQ(r.dim_ann_23, c.dim_ann_23);
    EXPECT_EQ(r.dim_ann_60, c.dim_ann_60);
    EXPECT_EQ(r.witness_count, c.witness_count);
    EXPECT_EQ(c.F_class, f3::apply(cube_class_group()->tau_matrix(), r.F_class));
}
