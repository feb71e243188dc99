#pragma once

#include <compare>
#include <numeric>
#include <set>
#include <string>

#include "bmo/errors.hpp"

namespace bmo {

/// An element num/den of Q/Z, kept reduced with 0 <= num < den (zero is 0/1).
class InvariantValue {
public:
    InvariantValue() = default;
    InvariantValue(long long num, long long den) {
        if (den <= 0) throw DomainError("InvariantValue: denominator must be positive");
        num %= den;
        if (num < 0) num += den;
        long long g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    static InvariantValue zero() { return {}; }
    static InvariantValue half() { return {1, 2}; }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    friend InvariantValue operator+(const InvariantValue& a, const InvariantValue& b) {
        long long l = std::lcm(a.den_, b.den_);
        return {a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l};
    }
    InvariantValue operator-() const { return {-num_, den_}; }
    friend InvariantValue operator-(const InvariantValue& a, const InvariantValue& b) { return a + (-b); }
    InvariantValue& operator+=(const InvariantValue& o) { return *this = *this + o; }
    friend InvariantValue operator*(long long k, const InvariantValue& a) { return {k * a.num_, a.den_}; }

    friend bool operator==(const InvariantValue&, const InvariantValue&) = default;
    friend std::strong_ordering operator<=>(const InvariantValue& a, const InvariantValue& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    /// "0", "1/2", "1/3", "2/3", ...
    std::string str() const { return num_ == 0 ? "0" : std::to_string(num_) + "/" + std::to_string(den_); }

    static InvariantValue parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return {std::stoll(s), 1};
            return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
        } catch (const std::logic_error&) {
            throw DomainError("InvariantValue: cannot parse '" + s + "'");
        }
    }

private:
    long long num_ = 0;
    long long den_ = 1;
};

using InvariantSet = std::set<InvariantValue>;

/// {a + b : a in A, b in B}
inline InvariantSet sumset(const InvariantSet& a, const InvariantSet& b) {
    InvariantSet out;
    for (const auto& x : a) {
        for (const auto& y : b) out.insert(x + y);
    }
    return out;
}

inline std::string to_string(const InvariantSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& v : s) {
        if (!first) out += ", ";
        out += v.str();
        first = false;
    }
    return out + "}";
}

}  // namespace bmo
