#pragma once

#include <string>

#include "bmo/tower/ring_traits.hpp"

namespace bmo {

/// a + b*zeta over a coefficient ring T, with zeta^2 = -1 - zeta.
template <class T>
class Cyclo {
public:
    Cyclo() = default;
    Cyclo(T a, T b) : a_(std::move(a)), b_(std::move(b)) {}
    explicit Cyclo(const T& a) : a_(a), b_(ring_from_int<T>(0, a)) {}

    /// zeta, with coefficients embedded like `like`.
    static Cyclo zeta(const T& like) { return Cyclo(ring_from_int<T>(0, like), ring_from_int<T>(1, like)); }
    static Cyclo from_int(long long n, const T& like) { return Cyclo(ring_from_int<T>(n, like), ring_from_int<T>(0, like)); }

    const T& a() const { return a_; }
    const T& b() const { return b_; }

    bool is_zero() const { return RingTraits<T>::is_zero(a_) && RingTraits<T>::is_zero(b_); }

    friend Cyclo operator+(const Cyclo& x, const Cyclo& y) { return Cyclo(x.a_ + y.a_, x.b_ + y.b_); }
    friend Cyclo operator-(const Cyclo& x, const Cyclo& y) { return Cyclo(x.a_ - y.a_, x.b_ - y.b_); }
    Cyclo operator-() const { return Cyclo(-a_, -b_); }
    friend Cyclo operator*(const Cyclo& x, const Cyclo& y) {
        T bd = x.b_ * y.b_;
        return Cyclo(x.a_ * y.a_ - bd, x.a_ * y.b_ + x.b_ * y.a_ - bd);
    }
    friend Cyclo operator*(const Cyclo& x, const T& s) { return Cyclo(x.a_ * s, x.b_ * s); }

    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    /// The nontrivial automorphism zeta -> zeta^2.
    Cyclo conj() const { return Cyclo(a_ - b_, -b_); }
    /// Norm down to the coefficient ring: a^2 - ab + b^2.
    T norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }

    Cyclo inverse() const {
        T n = norm();
        Cyclo c = conj();
        return Cyclo(c.a_ / n, c.b_ / n);
    }
    friend Cyclo operator/(const Cyclo& x, const Cyclo& y) { return x * y.inverse(); }

    Cyclo pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclo r = from_int(1, a_);
        Cyclo b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    template <class F>
    auto map(F&& f) const -> Cyclo<decltype(f(std::declval<T>()))> {
        return {f(a_), f(b_)};
    }

    friend bool operator==(const Cyclo& x, const Cyclo& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

private:
    T a_{};
    T b_{};
};

using CycloElement = Cyclo<Rational>;

inline std::string to_string(const CycloElement& x) {
    if (x.b().is_zero()) return x.a().str();
    std::string zeta = x.b() == Rational(1) ? "zeta" : (x.b() == Rational(-1) ? "-zeta" : x.b().str() + "*zeta");
    if (x.a().is_zero()) return zeta;
    return x.a().str() + (zeta[0] == '-' ? " - " + zeta.substr(1) : " + " + zeta);
}

template <class T>
struct RingTraits<Cyclo<T>> {
    static Cyclo<T> from_int(long long n, const Cyclo<T>& like) { return Cyclo<T>::from_int(n, like.a()); }
    static bool is_zero(const Cyclo<T>& x) { return x.is_zero(); }
};

}  // namespace bmo
