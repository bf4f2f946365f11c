#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "padyn/error.hpp"

namespace padyn {

/// A p-adic valuation: an integer, or +infinity for zero.
///
/// The norm is always carried as this exponent (|x|_p = p^-v) and never as a
/// float. Larger valuation means smaller norm.
class Valuation {
public:
    constexpr Valuation(std::int64_t v) noexcept : value_(v) {}  // NOLINT(implicit)

    static constexpr Valuation infinity() noexcept { return Valuation(); }

    constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
    constexpr bool is_finite() const noexcept { return value_.has_value(); }

    std::int64_t value() const {
        if (!value_) throw NotApplicable("valuation of zero is +infinity");
        return *value_;
    }

    friend constexpr bool operator==(const Valuation&, const Valuation&) = default;

    friend constexpr std::strong_ordering operator<=>(const Valuation& lhs, const Valuation& rhs) noexcept {
        if (lhs.is_infinite() || rhs.is_infinite()) {
            return lhs.is_infinite() <=> rhs.is_infinite();
        }
        return *lhs.value_ <=> *rhs.value_;
    }

    friend constexpr Valuation operator+(const Valuation& lhs, const Valuation& rhs) noexcept {
        if (lhs.is_infinite() || rhs.is_infinite()) return infinity();
        return Valuation(*lhs.value_ + *rhs.value_);
    }

    std::string to_string() const { return value_ ? std::to_string(*value_) : std::string("inf"); }

private:
    constexpr Valuation() noexcept = default;
    std::optional<std::int64_t> value_;
};

}  // namespace padyn
