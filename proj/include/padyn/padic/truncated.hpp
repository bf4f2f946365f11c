#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padyn/error.hpp"
#include "padyn/padic/prime.hpp"
#include "padyn/padic/rational.hpp"

namespace padyn {

/**
 * A p-adic number known to finite precision: p^v * u with u a unit known
 * modulo p^N (N significant digits, N >= 1).
 *
 * Zero is a separate tagged value meaning "congruent to 0 mod p^k"; k is its
 * absolute precision. Precision tracking works on absolute precision
 * (v + N for nonzero values):
 *   - add/sub: absolute precision is the minimum of the operands'; the
 *     significant digits shrink by however many leading digits cancel.
 *   - mul/div: significant digits are the minimum of the operands'.
 * Dividing by a tagged zero is an error rather than a guess.
 */
class TruncatedPadic {
public:
    /// The value known only to be divisible by p^absolute_precision.
    static TruncatedPadic zero(Prime p, std::int64_t absolute_precision) {
        TruncatedPadic z(p);
        z.zero_ = true;
        z.valuation_ = absolute_precision;
        return z;
    }

    /// p^v * unit to `precision` significant digits; the unit must be coprime to p.
    static TruncatedPadic from_unit(Prime p, std::int64_t v, const Integer& unit, std::int64_t precision) {
        if (precision < 1) throw InvalidInput("precision must be at least 1");
        Integer modulus = p.power(precision);
        Integer u = unit % modulus;
        if (u < 0) u += modulus;
        if (mpz_divisible_ui_p(u.get_mpz_t(), p.ulong())) throw InvalidInput("unit digit d0 must be nonzero");
        TruncatedPadic t(p);
        t.valuation_ = v;
        t.precision_ = precision;
        t.unit_ = u;
        return t;
    }

    /// Expansion of an exact rational to `precision` significant digits.
    /// Zero becomes the tagged zero with absolute precision `precision`.
    static TruncatedPadic from_rational(const Rational& x, Prime p, std::int64_t precision) {
        if (precision < 1) throw InvalidInput("precision must be at least 1");
        if (x == 0) return zero(p, precision);
        std::int64_t v = padyn::valuation(x, p).value();
        return from_unit(p, v, residue(unit_part(x, p), p.power(precision)), precision);
    }

    /// Expansion of an exact rational known to absolute precision `absolute`.
    static TruncatedPadic from_rational_absolute(const Rational& x, Prime p, std::int64_t absolute) {
        if (x == 0) return zero(p, absolute);
        std::int64_t v = padyn::valuation(x, p).value();
        if (v >= absolute) return zero(p, absolute);
        return from_rational(x, p, absolute - v);
    }

    const Prime& prime() const noexcept { return prime_; }
    bool is_zero() const noexcept { return zero_; }

    std::int64_t valuation() const {
        if (zero_) {
            throw PrecisionExhausted("value is indistinguishable from zero mod " + std::to_string(prime_.value()) +
                                     "^" + std::to_string(valuation_));
        }
        return valuation_;
    }

    /// Significant digits; 0 for the tagged zero.
    std::int64_t precision() const noexcept { return zero_ ? 0 : precision_; }
    std::int64_t absolute_precision() const noexcept { return zero_ ? valuation_ : valuation_ + precision_; }

    const Integer& unit() const { return unit_; }

    /// d0 ... d_{N-1}, least significant first.
    std::vector<std::int64_t> unit_digits() const {
        std::vector<std::int64_t> digits;
        if (zero_) return digits;
        Integer rest = unit_;
        Integer pz(prime_.value());
        for (std::int64_t i = 0; i < precision_; ++i) {
            Integer d = rest % pz;
            digits.push_back(d.get_si());
            rest /= pz;
        }
        return digits;
    }

    /// The representative p^v * u as an exact rational (0 for the tagged zero).
    Rational to_rational() const {
        if (zero_) return Rational(0);
        return prime_power(prime_, valuation_) * Rational(unit_);
    }

    /// True when `x` is congruent to this value to the tracked precision.
    bool agrees_with(const Rational& x) const {
        return (*this - from_rational_absolute(x, prime_, absolute_precision())).is_zero();
    }

    /// "p^v * (d0 + d1*p + ... ) [N digits]"; the tagged zero prints as "0 (mod p^k)".
    std::string to_string() const {
        std::string p = std::to_string(prime_.value());
        if (zero_) return "0 (mod " + p + "^" + std::to_string(valuation_) + ")";
        std::string out = p + "^" + std::to_string(valuation_) + " * (";
        auto digits = unit_digits();
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (i > 0) out += " + ";
            out += std::to_string(digits[i]);
            if (i == 1) out += "*" + p;
            if (i > 1) out += "*" + p + "^" + std::to_string(i);
        }
        out += ") [" + std::to_string(precision_) + " digits]";
        return out;
    }

    TruncatedPadic operator-() const {
        if (zero_) return *this;
        return from_unit(prime_, valuation_, -unit_, precision_);
    }

    friend TruncatedPadic operator+(const TruncatedPadic& x, const TruncatedPadic& y) {
        Prime p = common(x, y);
        std::int64_t absolute = std::min(x.absolute_precision(), y.absolute_precision());
        if (x.zero_ && y.zero_) return zero(p, absolute);
        std::int64_t base = std::min(x.zero_ ? y.valuation_ : x.valuation_, y.zero_ ? x.valuation_ : y.valuation_);
        if (base >= absolute) return zero(p, absolute);

        Integer modulus = p.power(absolute - base);
        Integer sum = x.shifted(base) + y.shifted(base);
        sum %= modulus;
        if (sum < 0) sum += modulus;
        if (sum == 0) return zero(p, absolute);
        Integer unit;
        std::int64_t k = strip_prime(sum, p, unit);
        return from_unit(p, base + k, unit, absolute - base - k);
    }

    friend TruncatedPadic operator-(const TruncatedPadic& x, const TruncatedPadic& y) { return x + (-y); }

    friend TruncatedPadic operator*(const TruncatedPadic& x, const TruncatedPadic& y) {
        Prime p = common(x, y);
        if (x.zero_ && y.zero_) return zero(p, x.valuation_ + y.valuation_);
        if (x.zero_) return zero(p, x.valuation_ + y.valuation_);
        if (y.zero_) return zero(p, y.valuation_ + x.valuation_);
        std::int64_t n = std::min(x.precision_, y.precision_);
        return from_unit(p, x.valuation_ + y.valuation_, x.unit_ * y.unit_, n);
    }

    friend TruncatedPadic operator/(const TruncatedPadic& x, const TruncatedPadic& y) {
        Prime p = common(x, y);
        if (y.zero_) {
            throw DivisionByZero("divisor is indistinguishable from zero mod " + std::to_string(p.value()) + "^" +
                                 std::to_string(y.valuation_));
        }
        if (x.zero_) return zero(p, x.valuation_ - y.valuation_);
        std::int64_t n = std::min(x.precision_, y.precision_);
        Integer modulus = p.power(n);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), y.unit_.get_mpz_t(), modulus.get_mpz_t());
        return from_unit(p, x.valuation_ - y.valuation_, x.unit_ * inv, n);
    }

private:
    explicit TruncatedPadic(Prime p) : prime_(p) {}

    static Prime common(const TruncatedPadic& x, const TruncatedPadic& y) {
        if (x.prime_ != y.prime_) throw PrimeMismatch("truncated operands measured by different primes");
        return x.prime_;
    }

    /// The integer u * p^(v - base), 0 for the tagged zero.
    Integer shifted(std::int64_t base) const {
        if (zero_) return Integer(0);
        return unit_ * prime_.power(valuation_ - base);
    }

    Prime prime_;
    bool zero_ = false;
    std::int64_t valuation_ = 0;  // absolute precision when zero_
    std::int64_t precision_ = 0;
    Integer unit_;
};

}  // namespace padyn
