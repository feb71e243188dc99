#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bmo/padic/hensel.hpp"
#include "bmo/padic/power_class.hpp"

using namespace bmo;

namespace {

PadicNumber qp(long long n, std::uint64_t p, int prec = kDefaultPrecision) {
    return PadicNumber::from_integer(n, p, prec);
}

// Independent oracle: x is an n-th power in Q_p iff (after valuation check) the unit is an
// n-th power mod p^8, which we test by enumerating all n-th powers of units mod p^8.
std::set<Integer> unit_powers_mod(std::uint64_t p, int n, int k) {
    Integer mod = ipow(Integer(p), k);
    std::set<Integer> s;
    for (Integer x = 1; x < mod; ++x) {
        if (x % p == 0) continue;
        Integer y = 1;
        for (int i = 0; i < n; ++i) y = y * x % mod;
        s.insert(y);
    }
    return s;
}

}  // namespace

TEST(PadicNumber, RationalRoundTrip) {
    auto x = PadicNumber::from_rational(Rational(-7, 12), 3, 20);
    EXPECT_EQ(x.valuation(), -1);
    EXPECT_EQ(x.precision(), 20);
    auto back = PadicNumber::from_rational(x.to_rational(), 3, 20);
    EXPECT_TRUE(back.agrees_with(x));
}

TEST(PadicNumber, FieldOperations) {
    std::mt19937_64 rng(5);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 17ULL}) {
        for (int i = 0; i < 200; ++i) {
            Rational a(Integer(static_cast<long long>(rng() % 2001) - 1000), Integer(rng() % 500 + 1));
            Rational b(Integer(static_cast<long long>(rng() % 2001) - 1000), Integer(rng() % 500 + 1));
            if (a.is_zero() || b.is_zero()) continue;
            auto pa = PadicNumber::from_rational(a, p), pb = PadicNumber::from_rational(b, p);
            EXPECT_TRUE((pa * pb).agrees_with(PadicNumber::from_rational(a * b, p)));
            EXPECT_TRUE((pa / pb).agrees_with(PadicNumber::from_rational(a / b, p)));
            if (a + b != 0) {
                EXPECT_TRUE((pa + pb).agrees_with(PadicNumber::from_rational(a + b, p)));
            }
        }
    }
}

TEST(PadicNumber, CancellationLosesPrecision) {
    auto a = qp(1, 5, 10);
    auto b = qp(1 + 5 * 5 * 5, 5, 10);
    auto d = b - a;
    EXPECT_EQ(d.valuation(), 3);
    EXPECT_EQ(d.absolute_precision(), 10);
    EXPECT_EQ(d.precision(), 7);
}

TEST(PadicNumber, ZeroFlag) {
    auto a = qp(7, 7, 5);
    auto z = a - a;
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.absolute_precision(), 6);
    EXPECT_THROW(z.inverse(), InsufficientPrecision);
    EXPECT_THROW(power_class(z, 2), InsufficientPrecision);
}

TEST(Hensel, CubeRootOfTenAtThree) {
    auto r = hensel_root(std::vector<Integer>{-10, 0, 0, 1}, qp(4, 3, 5), 30);
    EXPECT_EQ(r.residue(2), 4);
    auto f = to_padic_polynomial({-10, 0, 0, 1}, 3, 60);
    auto fr = evaluate(f, r);
    EXPECT_TRUE(fr.is_zero() || fr.valuation() >= 30);
}

TEST(Hensel, SelmerPreimageCubic) {
    auto r = hensel_root(std::vector<Integer>{3600, 0, -1, 1}, qp(1, 3, 5), 25);
    EXPECT_EQ(r.residue(2), 1);
    auto fr = evaluate(to_padic_polynomial({3600, 0, -1, 1}, 3, 60), r);
    EXPECT_TRUE(fr.is_zero() || fr.valuation() >= 25);
}

TEST(Hensel, SquareRootOfMinusOneAtFive) {
    auto r = hensel_root(std::vector<Integer>{1, 0, 1}, qp(2, 5, 3), 20);
    EXPECT_EQ(r.residue(2), 7);
}

TEST(Hensel, NewtonConditionFailure) {
    // x^2 - 3 at p = 2 from a = 1: v(f) = 1, v(f') = 1
    EXPECT_THROW(hensel_root(std::vector<Integer>{-3, 0, 1}, qp(1, 2, 5), 10), NoConvergence);
}

TEST(Hensel, InsufficientCoefficientPrecision) {
    PadicPolynomial f{PadicNumber::from_integer(-10, 3, 4), qp(0, 3, 40), qp(0, 3, 40), qp(1, 3, 40)};
    EXPECT_THROW(hensel_root(f, qp(4, 3, 5), 30), InsufficientPrecision);
}

TEST(Hensel, RootsVerifiedOnRandomSquares) {
    std::mt19937_64 rng(9);
    for (std::uint64_t p : {3ULL, 5ULL, 13ULL, 17ULL}) {
        for (int i = 0; i < 50; ++i) {
            long long a = static_cast<long long>(rng() % (p - 1)) + 1;
            long long c = a * a + static_cast<long long>(p) * static_cast<long long>(rng() % 100);
            auto r = hensel_root(std::vector<Integer>{-c, 0, 1}, qp(a, p, 3), 20);
            auto fr = evaluate(to_padic_polynomial({-c, 0, 1}, p, 60), r);
            EXPECT_TRUE(fr.is_zero() || fr.valuation() >= 20);
        }
    }
}

TEST(PowerClass, KnownExamples) {
    EXPECT_TRUE(power_class(Rational(17), 2, Place::finite(2)).is_nth_power);
    EXPECT_TRUE(power_class(Rational(10), 3, Place::finite(3)).is_nth_power);
    EXPECT_FALSE(power_class(Rational(2), 4, Place::finite(17)).is_nth_power);
    EXPECT_TRUE(power_class(Rational(17), 2, Place::infinite()).is_nth_power);
    EXPECT_FALSE(power_class(Rational(-1), 2, Place::infinite()).is_nth_power);
}

TEST(PowerClass, RejectsBadInput) {
    EXPECT_THROW(power_class(Rational(0), 2, Place::finite(3)), DomainError);
    EXPECT_THROW(power_class(Rational(2), 3, Place::infinite()), DomainError);
    EXPECT_THROW(power_class(Rational(2), 5, Place::finite(3)), DomainError);
}

TEST(PowerClass, AgreesWithEnumerationModP8) {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 17ULL}) {
        // p^8 for 17 is too large to enumerate; p^4 suffices for an odd prime not dividing n
        int k = p == 17 ? 3 : 8;
        Integer mod = ipow(Integer(p), k);
        for (int n : {2, 3, 4}) {
            auto powers = unit_powers_mod(p, n, k);
            for (Integer u = 1; u < std::min(mod, Integer(4000)); ++u) {
                if (u % p == 0) continue;
                auto x = PadicNumber::from_unit(p, 0, u, 30);
                EXPECT_EQ(power_class(x, n).is_nth_power, powers.count(u) == 1) << p << " " << n << " " << u;
                auto y = PadicNumber::from_unit(p, 1, u, 30);
                EXPECT_FALSE(power_class(y, n).is_nth_power);
                auto z = PadicNumber::from_unit(p, n, u, 30);
                EXPECT_EQ(power_class(z, n).is_nth_power, powers.count(u) == 1);
            }
        }
    }
}

TEST(PowerClass, MultiplicationIsClassOfProduct) {
    std::mt19937_64 rng(2024);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 17ULL}) {
        for (int n : {2, 3, 4}) {
            for (int i = 0; i < 1000; ++i) {
                Rational x(Integer(static_cast<long long>(rng() % 100000) - 50000), Integer(rng() % 1000 + 1));
                Rational y(Integer(static_cast<long long>(rng() % 100000) - 50000), Integer(rng() % 1000 + 1));
                if (x.is_zero() || y.is_zero()) continue;
                auto v = Place::finite(p);
                EXPECT_EQ(power_class(x, n, v).cls * power_class(y, n, v).cls, power_class(x * y, n, v).cls);
            }
        }
    }
}

TEST(PowerClass, SquareClassCounts) {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 17ULL}) {
        std::set<PowerClass> classes;
        for (long long x = 1; x < 2000; ++x) {
            classes.insert(power_class(Rational(x), 2, Place::finite(p)).cls);
            classes.insert(power_class(Rational(-x), 2, Place::finite(p)).cls);
        }
        EXPECT_EQ(classes.size(), p == 2 ? 8u : 4u) << p;
    }
}

TEST(PowerClass, SquareRepresentatives) {
    // odd p: {1, u, p, up} with u the least non-residue
    std::set<Rational> reps;
    for (long long x = 1; x < 200; ++x) reps.insert(power_class(Rational(x), 2, Place::finite(17)).cls.representative());
    EXPECT_EQ(reps, (std::set<Rational>{Rational(1), Rational(3), Rational(17), Rational(51)}));
}

TEST(PadicRoot, SquareAndFourthRoots) {
    auto r = padic_sqrt(qp(17, 2, 30), 20);
    ASSERT_TRUE(r.has_value());
    EXPECT_TRUE((*r * *r).agrees_with(qp(17, 2, 20)));
    EXPECT_FALSE(padic_sqrt(qp(3, 2, 30), 20).has_value());
    EXPECT_FALSE(padic_sqrt(qp(2, 2, 30), 20).has_value());
    auto f = padic_root(qp(17, 2, 30), 4, 20);
    ASSERT_TRUE(f.has_value());
    EXPECT_TRUE(f->pow(4).agrees_with(qp(17, 2, 20)));
    auto c = padic_root(qp(10, 3, 30), 3, 20);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(c->pow(3).agrees_with(qp(10, 3, 20)));
    auto s = padic_sqrt(PadicNumber::from_rational(Rational(-4, 25), 5, 30), 20);
    ASSERT_TRUE(s.has_value());
    EXPECT_TRUE((*s * *s).agrees_with(PadicNumber::from_rational(Rational(-4, 25), 5, 18)));
}

TEST(PadicRoot, TightInputPrecisionAtTwo) {
    // the input carries only a few digits beyond the target: Newton must not bleed digits each step
    for (long long n : {17, 97, 1921, 8161, 33}) {
        auto f = padic_root(qp(n, 2, 24), 4, 20);
        bool oracle = unit_powers_mod(2, 4, 8).count(Integer(n % 256)) > 0;
        ASSERT_EQ(f.has_value(), oracle) << n;
        if (f) {
            EXPECT_GE(f->absolute_precision(), 20) << n;
            EXPECT_TRUE(f->pow(4).agrees_with(qp(n, 2, 20))) << n;
        }
    }
    auto c = padic_root(qp(10, 3, 22), 3, 20);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(c->pow(3).agrees_with(qp(10, 3, 20)));
}
