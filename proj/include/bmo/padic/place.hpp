#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "bmo/arith/primes.hpp"

namespace bmo {

/// A place of Q: a finite prime or the real place.
class Place {
public:
    static Place infinite() { return Place(0); }
    static Place finite(std::uint64_t p) {
        if (!is_prime(p)) throw DomainError("Place: " + std::to_string(p) + " is not prime");
        return Place(p);
    }

    bool is_infinite() const { return p_ == 0; }
    bool is_finite() const { return p_ != 0; }
    std::uint64_t prime() const {
        if (p_ == 0) throw DomainError("Place: the real place has no prime");
        return p_;
    }

    std::string str() const { return p_ == 0 ? "inf" : std::to_string(p_); }

    /// Finite places in increasing order, then the real place.
    friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
        auto key = [](const Place& x) { return x.p_ == 0 ? UINT64_MAX : x.p_; };
        return key(a) <=> key(b);
    }
    friend bool operator==(const Place&, const Place&) = default;

private:
    explicit Place(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

}  // namespace bmo
