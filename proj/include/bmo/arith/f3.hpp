#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bmo::f3 {

/// Vectors and matrices over F_3 of fixed dimension 4 (the cube-class group of Q_3(zeta_3)).
inline constexpr std::size_t kDim = 4;

using Vec = std::array<int, kDim>;
using Mat = std::array<Vec, kDim>;  // row-major

inline int norm3(int x) { return ((x % 3) + 3) % 3; }

inline Vec reduce(Vec v) {
    for (auto& x : v) x = norm3(x);
    return v;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r{};
    for (std::size_t i = 0; i < kDim; ++i) r[i] = norm3(a[i] + b[i]);
    return r;
}

inline Vec scale(int s, const Vec& a) {
    Vec r{};
    for (std::size_t i = 0; i < kDim; ++i) r[i] = norm3(s * a[i]);
    return r;
}

inline bool is_zero(const Vec& v) {
    for (int x : v) {
        if (norm3(x) != 0) return false;
    }
    return true;
}

inline int dot(const Vec& a, const Vec& b) {
    int s = 0;
    for (std::size_t i = 0; i < kDim; ++i) s += a[i] * b[i];
    return norm3(s);
}

/// x^T M y
inline int bilinear(const Mat& m, const Vec& x, const Vec& y) {
    int s = 0;
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) s += x[i] * m[i][j] * y[j];
    }
    return norm3(s);
}

/// M v, with v as a column.
inline Vec apply(const Mat& m, const Vec& v) {
    Vec r{};
    for (std::size_t i = 0; i < kDim; ++i) {
        int s = 0;
        for (std::size_t j = 0; j < kDim; ++j) s += m[i][j] * v[j];
        r[i] = norm3(s);
    }
    return r;
}

inline Mat mul(const Mat& a, const Mat& b) {
    Mat r{};
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) {
            int s = 0;
            for (std::size_t k = 0; k < kDim; ++k) s += a[i][k] * b[k][j];
            r[i][j] = norm3(s);
        }
    }
    return r;
}

inline Mat transpose(const Mat& a) {
    Mat r{};
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) r[i][j] = a[j][i];
    }
    return r;
}

inline Mat identity() {
    Mat r{};
    for (std::size_t i = 0; i < kDim; ++i) r[i][i] = 1;
    return r;
}

/// Row-echelon basis of a subspace; insertion reports whether the dimension grew.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(const std::vector<Vec>& gens) {
        for (const auto& g : gens) insert(g);
    }

    bool insert(const Vec& v) {
        Vec r = residual(v);
        if (is_zero(r)) return false;
        std::size_t pivot = 0;
        while (r[pivot] == 0) ++pivot;
        if (r[pivot] == 2) r = scale(2, r);
        // keep basis fully reduced on pivot columns
        for (auto& [p, b] : rows_) {
            if (b[pivot] != 0) b = add(b, scale(3 - b[pivot], r));
        }
        rows_.push_back({pivot, r});
        return true;
    }

    bool contains(const Vec& v) const { return is_zero(residual(v)); }
    std::size_t dim() const { return rows_.size(); }

    std::vector<Vec> basis() const {
        std::vector<Vec> out;
        for (const auto& [p, b] : rows_) out.push_back(b);
        return out;
    }

    /// Every element, in a fixed lexicographic order of coefficient tuples.
    std::vector<Vec> elements() const {
        std::vector<Vec> out{Vec{}};
        for (const auto& [p, b] : rows_) {
            std::vector<Vec> next;
            for (const auto& e : out) {
                for (int c = 0; c < 3; ++c) next.push_back(add(e, scale(c, b)));
            }
            out = std::move(next);
        }
        return out;
    }

private:
    Vec residual(Vec v) const {
        v = reduce(v);
        for (const auto& [p, b] : rows_) {
            if (v[p] != 0) v = add(v, scale(3 - v[p], b));
        }
        return v;
    }

    std::vector<std::pair<std::size_t, Vec>> rows_;
};

inline std::size_t rank(const Mat& m) {
    Subspace s;
    for (const auto& row : m) s.insert(row);
    return s.dim();
}

/// All v with rows . v = 0, as a subspace.
inline Subspace null_space(const std::vector<Vec>& rows) {
    Subspace out;
    // brute force over the 81 vectors: small and exact
    for (int a = 0; a < 81; ++a) {
        Vec v{a % 3, (a / 3) % 3, (a / 9) % 3, (a / 27) % 3};
        bool ok = true;
        for (const auto& r : rows) {
            if (dot(r, v) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) out.insert(v);
    }
    return out;
}

/// All 81 vectors of F_3^4 in a fixed order.
inline std::vector<Vec> all_vectors() {
    std::vector<Vec> out;
    for (int a = 0; a < 81; ++a) out.push_back(Vec{a % 3, (a / 3) % 3, (a / 9) % 3, (a / 27) % 3});
    return out;
}

inline std::string to_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < kDim; ++i) {
        if (i) s += ",";
        s += std::to_string(norm3(v[i]));
    }
    return s + ")";
}

}  // namespace bmo::f3
