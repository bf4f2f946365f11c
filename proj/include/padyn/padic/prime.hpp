#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "padyn/error.hpp"

namespace padyn {

/// A validated prime. Bounded by 2^31 so that every residue computation
/// with a single digit fits an unsigned long in GMP calls.
class Prime {
public:
    explicit Prime(std::int64_t value) : value_(value) {
        if (value < 2 || value >= (std::int64_t{1} << 31) || !is_prime(value)) {
            throw InvalidInput(std::to_string(value) + " is not a prime below 2^31");
        }
    }

    std::int64_t value() const noexcept { return value_; }
    unsigned long ulong() const noexcept { return static_cast<unsigned long>(value_); }
    bool is_two() const noexcept { return value_ == 2; }

    /// p^k for k >= 0.
    mpz_class power(std::int64_t k) const {
        mpz_class out;
        mpz_ui_pow_ui(out.get_mpz_t(), ulong(), static_cast<unsigned long>(k));
        return out;
    }

    friend auto operator<=>(const Prime&, const Prime&) = default;

    static bool is_prime(std::int64_t n) noexcept {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        for (std::int64_t d = 3; d * d <= n; d += 2) {
            if (n % d == 0) return false;
        }
        return true;
    }

private:
    std::int64_t value_;
};

}  // namespace padyn
