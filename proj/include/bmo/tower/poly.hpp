#pragma once

#include <array>
#include <map>

#include "bmo/tower/ring_traits.hpp"

namespace bmo {

/// Sparse polynomial in X, Y, Z with coefficients in T.
template <class T>
class Poly {
public:
    using Monomial = std::array<int, 3>;

    Poly() = default;
    static Poly constant(const T& c) { return term(c, {0, 0, 0}); }
    static Poly term(const T& c, Monomial m) {
        Poly p;
        if (!RingTraits<T>::is_zero(c)) p.terms_.emplace(m, c);
        return p;
    }
    static Poly X(const T& one) { return term(one, {1, 0, 0}); }
    static Poly Y(const T& one) { return term(one, {0, 1, 0}); }
    static Poly Z(const T& one) { return term(one, {0, 0, 1}); }

    const std::map<Monomial, T>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    Poly operator-() const {
        Poly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
        }
        return r;
    }
    friend Poly operator*(const Poly& a, const T& s) { return a * constant(s); }

    template <class F>
    Poly map_coefficients(F&& f) const {
        Poly r;
        for (const auto& [m, c] : terms_) r.add_term(m, f(c));
        return r;
    }

    /// Value at (x, y, z) after mapping coefficients through `embed` into the ring of x, y, z.
    template <class R, class E>
    R evaluate(E&& embed, const R& x, const R& y, const R& z) const {
        R acc = ring_from_int<R>(0, x);
        for (const auto& [m, c] : terms_) {
            R t = embed(c);
            for (int i = 0; i < m[0]; ++i) t = t * x;
            for (int i = 0; i < m[1]; ++i) t = t * y;
            for (int i = 0; i < m[2]; ++i) t = t * z;
            acc = acc + t;
        }
        return acc;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

private:
    void add_term(const Monomial& m, const T& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!RingTraits<T>::is_zero(c)) terms_.emplace(m, c);
            return;
        }
        it->second = it->second + c;
        if (RingTraits<T>::is_zero(it->second)) terms_.erase(it);
    }

    std::map<Monomial, T> terms_;
};

}  // namespace bmo
