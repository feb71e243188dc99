#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "bmo/local/invariant.hpp"
#include "bmo/local/norm_group.hpp"
#include "bmo/local/q3zeta.hpp"
#include "bmo/tower/radical.hpp"

namespace bmo {

inline constexpr int kCubicPrecision = 24;

/// Norm group of K(a^{1/3}) / K inside K^*/(K^*)^3 = F_3^4, K = Q_3(zeta_3).
struct CubicNormGroup {
    f3::Subspace span;
    std::size_t samples = 0;
};

namespace detail {

inline Q3Zeta random_q3zeta_integer(std::mt19937_64& rng, int precision) {
    auto coord = [&]() { return static_cast<long long>(rng() % 81) - 40; };
    Q3Zeta y = q3z::from_cyclo(CycloElement(Rational(coord()), Rational(coord())), precision);
    int e = rng() % 3 == 0 ? static_cast<int>(rng() % 4) : 0;
    if (e > 0) y = y * q3z::pi(precision).pow(e);
    return y;
}

}  // namespace detail

/// Samples norms y0^3 + a y1^3 + a^2 y2^3 - 3a y0 y1 y2 until the spanned subspace is unchanged for
/// kStableSamples consecutive samples; the result must have dimension 3 (index 3).
inline CubicNormGroup cubic_norm_group(const Q3Zeta& a, int precision = kCubicPrecision, std::uint64_t seed = 0) {
    if (f3::is_zero(q3z::express(a, precision)))
        throw DegenerateExtension("cubic_norm_group: radicand is a cube, the extension is trivial");
    CubicNormGroup g;
    std::mt19937_64 rng(seed);
    const Q3Zeta zero = q3z::from_rational(Rational(0), precision);
    auto add = [&](const Q3Zeta& y0, const Q3Zeta& y1, const Q3Zeta& y2) {
        ++g.samples;
        Radical<Q3Zeta> y({y0, y1, y2}, a);
        try {
            return g.span.insert(q3z::express(y.cubic_norm_formula(), precision));
        } catch (const InsufficientPrecision&) {
            return false;  // a norm too close to zero at this precision carries no class
        }
    };
    add(zero, q3z::one(precision), zero);  // N(a^{1/3}) = a
    int stable = 0;
    while (stable < kStableSamples) {
        if (static_cast<int>(g.samples) > kMaxNormSamples)
            throw InsufficientPrecision("cubic_norm_group: norm subgroup did not stabilize");
        Q3Zeta y0 = rng() % 4 == 0 ? zero : detail::random_q3zeta_integer(rng, precision);
        Q3Zeta y1 = rng() % 4 == 0 ? zero : detail::random_q3zeta_integer(rng, precision);
        Q3Zeta y2 = rng() % 4 == 0 ? zero : detail::random_q3zeta_integer(rng, precision);
        if (y0.is_zero() && y1.is_zero() && y2.is_zero()) continue;
        stable = add(y0, y1, y2) ? 0 : stable + 1;
    }
    if (g.span.dim() != 3) throw InsufficientPrecision("cubic_norm_group: norm subgroup does not have index 3");
    return g;
}

/// The group K^*/(K^*)^3 for K = Q_3(zeta_3) with its cubic Hilbert pairing and the action of tau.
///
/// The pairing matrix P satisfies hilbert3(x, y) = (x^T P y) / 3 in generator coordinates. Norm
/// membership fixes each row of P up to a nonzero scalar; the scalars are pinned down by requiring
/// that the kernel of x^T P equals the norm group of x for all 40 lines x, which leaves P and 2P.
/// The choice between them is a normalization: the first nonzero entry above the diagonal is 1.
class CubeClassGroup {
public:
    CubeClassGroup(int precision, std::uint64_t seed) : precision_(precision), seed_(seed) {
        gens_ = q3z::generators(precision);
        compute_norm_groups();
        compute_pairing();
        for (std::size_t j = 0; j < f3::kDim; ++j) {
            f3::Vec img = express(q3z::tau(gens_[j]));
            for (std::size_t i = 0; i < f3::kDim; ++i) tau_[i][j] = img[i];
        }
    }

    int precision() const { return precision_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t dimension() const { return f3::kDim; }
    const std::array<Q3Zeta, 4>& generators() const { return gens_; }
    const f3::Mat& pairing_matrix() const { return pairing_; }
    const f3::Mat& tau_matrix() const { return tau_; }

    f3::Vec express(const Q3Zeta& x) const { return q3z::express(x, precision_); }
    f3::Vec express(const Rational& x) const { return express(q3z::from_rational(x, precision_)); }

    /// Norm group N_x of K(x^{1/3}) as computed for the line through x (N_x = N_{x^2}).
    const f3::Subspace& norm_group(const f3::Vec& x) const {
        if (f3::is_zero(x)) throw DegenerateExtension("CubeClassGroup: the trivial class has no cubic extension");
        return norm_groups_.at(line_of(x));
    }

    int pair(const f3::Vec& x, const f3::Vec& y) const { return f3::bilinear(pairing_, x, y); }

    /// Invariant of the cubic symbol: 0 iff y lies in the norm group of K(x^{1/3}).
    InvariantValue symbol(const f3::Vec& x, const f3::Vec& y) const {
        if (f3::is_zero(f3::reduce(x))) return InvariantValue::zero();
        int b = pair(x, y);
        if ((b == 0) != norm_group(x).contains(y))
            throw Error("CubeClassGroup: pairing disagrees with norm membership");
        return {b, 3};
    }

    /// {y : pairing(x, y) = 0 for all x in s}
    f3::Subspace annihilator(const f3::Subspace& s) const {
        std::vector<f3::Vec> rows;
        for (const auto& x : s.basis()) {
            f3::Vec row{};
            for (std::size_t j = 0; j < f3::kDim; ++j) {
                int acc = 0;
                for (std::size_t i = 0; i < f3::kDim; ++i) acc += x[i] * pairing_[i][j];
                row[j] = f3::norm3(acc);
            }
            rows.push_back(row);
        }
        return f3::null_space(rows);
    }

    f3::Subspace eigenspace(int sign) const {
        std::vector<f3::Vec> rows;
        for (std::size_t i = 0; i < f3::kDim; ++i) {
            f3::Vec r = tau_[i];
            r[i] = f3::norm3(r[i] - sign);
            rows.push_back(r);
        }
        return f3::null_space(rows);
    }

    bool pairing_is_skew() const {
        for (std::size_t i = 0; i < f3::kDim; ++i) {
            for (std::size_t j = 0; j < f3::kDim; ++j) {
                if (f3::norm3(pairing_[i][j] + pairing_[j][i]) != 0) return false;
            }
        }
        return true;
    }
    /// (tau x, tau y) = -(x, y): tau inverts the cube roots of unity in which the symbol takes values.
    bool pairing_is_tau_anti_invariant() const {
        f3::Mat t = f3::mul(f3::mul(f3::transpose(tau_), pairing_), tau_);
        for (std::size_t i = 0; i < f3::kDim; ++i) {
            for (std::size_t j = 0; j < f3::kDim; ++j) {
                if (f3::norm3(t[i][j] + pairing_[i][j]) != 0) return false;
            }
        }
        return true;
    }
    bool tau_is_involution() const { return f3::mul(tau_, tau_) == f3::identity(); }

    /// Lines of F_3^4 as normalized vectors (first nonzero coordinate 1), in enumeration order.
    static std::vector<f3::Vec> lines() {
        std::vector<f3::Vec> out;
        for (const auto& v : f3::all_vectors()) {
            if (!f3::is_zero(v) && line_of(v) == v) out.push_back(v);
        }
        return out;
    }

    static f3::Vec line_of(f3::Vec v) {
        v = f3::reduce(v);
        for (int x : v) {
            if (x != 0) return x == 1 ? v : f3::scale(2, v);
        }
        return v;
    }

private:
    void compute_norm_groups() {
        std::uint64_t k = 0;
        for (const auto& line : lines()) {
            Q3Zeta a = q3z::element_of_class(line, precision_);
            norm_groups_.emplace(line, cubic_norm_group(a, precision_, seed_ + 7919 * ++k).span);
        }
    }

    /// Normal vector of a hyperplane, normalized to first nonzero coordinate 1.
    static f3::Vec normal_of(const f3::Subspace& h) {
        auto n = f3::null_space(h.basis());
        if (n.dim() != 1) throw Error("CubeClassGroup: norm group is not a hyperplane");
        return line_of(n.basis().front());
    }

    void compute_pairing() {
        std::array<f3::Vec, 4> f{};
        for (std::size_t i = 0; i < f3::kDim; ++i) {
            f3::Vec e{};
            e[i] = 1;
            f[i] = normal_of(norm_groups_.at(e));
        }
        std::vector<f3::Mat> survivors;
        for (int mask = 0; mask < 16; ++mask) {
            f3::Mat p{};
            for (std::size_t i = 0; i < f3::kDim; ++i) p[i] = f3::scale(((mask >> i) & 1) ? 2 : 1, f[i]);
            bool ok = true;
            for (const auto& [line, h] : norm_groups_) {
                f3::Vec row{};
                for (std::size_t j = 0; j < f3::kDim; ++j) {
                    int acc = 0;
                    for (std::size_t i = 0; i < f3::kDim; ++i) acc += line[i] * p[i][j];
                    row[j] = f3::norm3(acc);
                }
                if (f3::is_zero(row) || line_of(row) != normal_of(h)) {
                    ok = false;
                    break;
                }
            }
            if (ok) survivors.push_back(p);
        }
        if (survivors.size() != 2) throw Error("CubeClassGroup: norm groups are not the kernels of one pairing");
        for (const auto& p : survivors) {
            if (first_upper_entry(p) == 1) pairing_ = p;
        }
        if (f3::rank(pairing_) != 4) throw Error("CubeClassGroup: pairing is degenerate");
    }

    static int first_upper_entry(const f3::Mat& p) {
        for (std::size_t i = 0; i < f3::kDim; ++i) {
            for (std::size_t j = i + 1; j < f3::kDim; ++j) {
                if (p[i][j] != 0) return p[i][j];
            }
        }
        return 0;
    }

    int precision_;
    std::uint64_t seed_;
    std::array<Q3Zeta, 4> gens_;
    std::map<f3::Vec, f3::Subspace> norm_groups_;
    f3::Mat pairing_{};
    f3::Mat tau_{};
};

/// Shared, lazily built group for (precision, seed).
inline std::shared_ptr<const CubeClassGroup> cube_class_group(int precision = kCubicPrecision, std::uint64_t seed = 0) {
    static std::map<std::pair<int, std::uint64_t>, std::shared_ptr<const CubeClassGroup>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(precision, seed);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto g = std::make_shared<const CubeClassGroup>(precision, seed);
    cache.emplace(key, g);
    return g;
}

/// Cubic Hilbert symbol (a, b) over Q_3(zeta_3): 0 iff b is a norm from K(a^{1/3}); 0 when a is a cube.
inline InvariantValue hilbert3(const Q3Zeta& a, const Q3Zeta& b, int precision = kCubicPrecision, std::uint64_t seed = 0) {
    auto g = cube_class_group(precision, seed);
    return g->symbol(g->express(a), g->express(b));
}

inline InvariantValue hilbert3(const Rational& a, const Rational& b, int precision = kCubicPrecision, std::uint64_t seed = 0) {
    return hilbert3(q3z::from_rational(a, precision), q3z::from_rational(b, precision), precision, seed);
}

}  // namespace bmo
