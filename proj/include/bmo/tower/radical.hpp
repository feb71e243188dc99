#pragma once

#include <string>
#include <vector>

#include "bmo/tower/cyclo.hpp"

namespace bmo {

/// Element c_0 + c_1 r + ... + c_{m-1} r^{m-1} of T[r]/(r^m - d).
template <class T>
class Radical {
public:
    Radical() = default;
    Radical(std::vector<T> coeffs, T radicand) : c_(std::move(coeffs)), d_(std::move(radicand)) {
        if (c_.empty()) throw DomainError("Radical: degree must be positive");
    }

    /// The scalar s embedded in T[r]/(r^m - d).
    static Radical scalar(const T& s, std::size_t m, const T& d) {
        std::vector<T> c(m, ring_from_int<T>(0, d));
        c[0] = s;
        return Radical(std::move(c), d);
    }
    /// The generator r.
    static Radical root(std::size_t m, const T& d) {
        std::vector<T> c(m, ring_from_int<T>(0, d));
        if (m == 1) {
            c[0] = d;
        } else {
            c[1] = ring_from_int<T>(1, d);
        }
        return Radical(std::move(c), d);
    }

    std::size_t degree() const { return c_.size(); }
    const T& radicand() const { return d_; }
    const std::vector<T>& coeffs() const { return c_; }
    const T& operator[](std::size_t i) const { return c_[i]; }

    friend Radical operator+(const Radical& x, const Radical& y) {
        check(x, y);
        std::vector<T> c(x.c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.c_[i] + y.c_[i];
        return Radical(std::move(c), x.d_);
    }
    friend Radical operator-(const Radical& x, const Radical& y) {
        check(x, y);
        std::vector<T> c(x.c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.c_[i] - y.c_[i];
        return Radical(std::move(c), x.d_);
    }
    Radical operator-() const {
        std::vector<T> c(c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
        return Radical(std::move(c), d_);
    }
    friend Radical operator*(const Radical& x, const Radical& y) {
        check(x, y);
        const std::size_t m = x.c_.size();
        std::vector<T> c(m, ring_from_int<T>(0, x.d_));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                T t = x.c_[i] * y.c_[j];
                if (i + j >= m) {
                    c[i + j - m] = c[i + j - m] + t * x.d_;
                } else {
                    c[i + j] = c[i + j] + t;
                }
            }
        }
        return Radical(std::move(c), x.d_);
    }
    friend Radical operator*(const Radical& x, const T& s) {
        std::vector<T> c(x.c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.c_[i] * s;
        return Radical(std::move(c), x.d_);
    }

    Radical pow(unsigned e) const {
        Radical r = scalar(ring_from_int<T>(1, d_), degree(), d_);
        Radical b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// Matrix of multiplication by this element on the basis 1, r, ..., r^{m-1} (columns = images).
    std::vector<std::vector<T>> multiplication_matrix() const {
        const std::size_t m = degree();
        std::vector<std::vector<T>> mat(m, std::vector<T>(m, ring_from_int<T>(0, d_)));
        Radical basis = scalar(ring_from_int<T>(1, d_), m, d_);
        Radical r = root(m, d_);
        for (std::size_t j = 0; j < m; ++j) {
            Radical img = *this * basis;
            for (std::size_t i = 0; i < m; ++i) mat[i][j] = img.c_[i];
            basis = basis * r;
        }
        return mat;
    }

    /// Norm to T as the determinant of the multiplication matrix (division free).
    T norm() const { return determinant(multiplication_matrix()); }

    /// a^3 + d b^3 + d^2 c^3 - 3 d abc for cubic elements.
    T cubic_norm_formula() const {
        if (degree() != 3) throw DomainError("Radical: closed norm formula needs degree 3");
        const T& a = c_[0];
        const T& b = c_[1];
        const T& c = c_[2];
        T three = ring_from_int<T>(3, d_);
        return a * a * a + d_ * b * b * b + d_ * d_ * c * c * c - three * d_ * a * b * c;
    }

    template <class F>
    Radical map_coefficients(F&& f) const {
        std::vector<T> c;
        c.reserve(c_.size());
        for (const auto& x : c_) c.push_back(f(x));
        return Radical(std::move(c), d_);
    }

    friend bool operator==(const Radical& x, const Radical& y) { return x.c_ == y.c_ && x.d_ == y.d_; }

    static T determinant(const std::vector<std::vector<T>>& a) {
        const std::size_t n = a.size();
        if (n == 1) return a[0][0];
        if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
        T acc = ring_from_int<T>(0, a[0][0]);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<T>> minor;
            for (std::size_t i = 1; i < n; ++i) {
                std::vector<T> row;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k != j) row.push_back(a[i][k]);
                }
                minor.push_back(std::move(row));
            }
            T term = a[0][j] * determinant(minor);
            acc = (j % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    }

private:
    static void check(const Radical& x, const Radical& y) {
        if (x.c_.size() != y.c_.size()) throw DomainError("Radical: degree mismatch");
    }

    std::vector<T> c_;
    T d_{};
};

template <class T>
struct RingTraits<Radical<T>> {
    static Radical<T> from_int(long long n, const Radical<T>& like) {
        return Radical<T>::scalar(ring_from_int<T>(n, like.radicand()), like.degree(), like.radicand());
    }
    static bool is_zero(const Radical<T>& x) {
        for (const auto& c : x.coeffs()) {
            if (!RingTraits<T>::is_zero(c)) return false;
        }
        return true;
    }
};

/// Element of the local algebra Q_p[r]/(r^m - d).
using LocalExtElement = Radical<PadicNumber>;

}  // namespace bmo
