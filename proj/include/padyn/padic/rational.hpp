#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "padyn/error.hpp"
#include "padyn/padic/prime.hpp"
#include "padyn/padic/valuation.hpp"

namespace padyn {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses an optional sign, an integer and an optional "/" integer, e.g. "-19/24".
inline Rational parse_rational(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> Rational {
        throw ParseError("invalid rational literal '" + std::string(text) + "': " + what + " at column " +
                             std::to_string(pos + 1),
                         pos + 1);
    };
    auto read_digits = [&](std::string& out) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out.push_back(text[pos]);
            ++pos;
        }
        return pos > start;
    };

    std::string numerator;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        if (text[pos] == '-') numerator.push_back('-');
        ++pos;
    }
    if (!read_digits(numerator)) return fail("expected digit");

    std::string denominator = "1";
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        denominator.clear();
        if (!read_digits(denominator)) return fail("expected digit after '/'");
    }
    if (pos != text.size()) return fail("unexpected character");

    Integer den(denominator);
    if (den == 0) {
        pos = text.find('/') + 1;
        return fail("zero denominator");
    }
    Rational out(Integer(numerator), den);
    out.canonicalize();
    return out;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Integer abs_integer(const Integer& n) { return n < 0 ? Integer(-n) : n; }

/// v_p(n) for a nonzero integer, with the cofactor coprime to p written to `rest`.
inline std::int64_t strip_prime(const Integer& n, const Prime& p, Integer& rest) {
    Integer pz(p.value());
    return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

inline Valuation valuation(const Rational& x, const Prime& p) {
    if (x == 0) return Valuation::infinity();
    Integer rest;
    std::int64_t up = strip_prime(x.get_num(), p, rest);
    std::int64_t down = strip_prime(x.get_den(), p, rest);
    return Valuation(up - down);
}

/// p^k as an exact rational, k of either sign.
inline Rational prime_power(const Prime& p, std::int64_t k) {
    if (k >= 0) return Rational(p.power(k));
    return Rational(Integer(1), p.power(-k));
}

/// x / p^v(x): the unit part, with numerator and denominator coprime to p.
inline Rational unit_part(const Rational& x, const Prime& p) {
    if (x == 0) throw NotApplicable("unit part of zero");
    Integer num, den;
    strip_prime(x.get_num(), p, num);
    strip_prime(x.get_den(), p, den);
    return Rational(num, den);
}

/// Residue of a rational with denominator coprime to `modulus`, in [0, modulus).
inline Integer residue(const Rational& x, const Integer& modulus) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
        throw NotApplicable("denominator of " + x.get_str() + " is not invertible mod " + modulus.get_str());
    }
    Integer out = (x.get_num() * inv) % modulus;
    if (out < 0) out += modulus;
    return out;
}

/// An exact rational number tagged with the prime whose valuation it is measured by.
class PadicRational {
public:
    PadicRational(Rational value, Prime p) : value_(std::move(value)), prime_(p) { value_.canonicalize(); }
    PadicRational(std::int64_t value, Prime p) : PadicRational(Rational(static_cast<long>(value)), p) {}
    PadicRational(std::string_view literal, Prime p) : PadicRational(parse_rational(literal), p) {}

    const Rational& value() const noexcept { return value_; }
    const Prime& prime() const noexcept { return prime_; }
    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }
    bool is_zero() const { return value_ == 0; }

    Valuation valuation() const { return padyn::valuation(value_, prime_); }

    /// |x|_p = p^(-returned value); identical to the valuation by construction.
    Valuation norm_exponent() const { return valuation(); }

    std::string to_string() const { return value_.get_str(); }

    friend PadicRational operator+(const PadicRational& x, const PadicRational& y) {
        return {x.value_ + y.value_, common(x, y)};
    }
    friend PadicRational operator-(const PadicRational& x, const PadicRational& y) {
        return {x.value_ - y.value_, common(x, y)};
    }
    friend PadicRational operator*(const PadicRational& x, const PadicRational& y) {
        return {x.value_ * y.value_, common(x, y)};
    }
    friend PadicRational operator/(const PadicRational& x, const PadicRational& y) {
        Prime p = common(x, y);
        if (y.is_zero()) throw DivisionByZero("division by exact zero");
        return {x.value_ / y.value_, p};
    }
    PadicRational operator-() const { return {-value_, prime_}; }

    friend bool operator==(const PadicRational& x, const PadicRational& y) {
        return x.prime_ == y.prime_ && x.value_ == y.value_;
    }

private:
    static Prime common(const PadicRational& x, const PadicRational& y) {
        if (x.prime_ != y.prime_) {
            throw PrimeMismatch("operands measured by different primes " + std::to_string(x.prime_.value()) +
                                " and " + std::to_string(y.prime_.value()));
        }
        return x.prime_;
    }

    Rational value_;
    Prime prime_;
};

inline Valuation valuation(const PadicRational& x) { return x.valuation(); }
inline Valuation norm_exponent(const PadicRational& x) { return x.norm_exponent(); }

/// Norms of x, y and x + y, with the strong triangle inequality and its
/// equality refinement evaluated on the exponents.
struct UltrametricRecord {
    Valuation vx;
    Valuation vy;
    Valuation vsum;
    bool strong_triangle = false;  // |x+y| <= max(|x|,|y|)
    bool equality_when_distinct = false;  // |x| != |y| implies |x+y| = max

    bool holds() const { return strong_triangle && equality_when_distinct; }
};

inline UltrametricRecord ultrametric_add_check(const PadicRational& x, const PadicRational& y) {
    PadicRational sum = x + y;
    UltrametricRecord rec{x.valuation(), y.valuation(), sum.valuation()};
    Valuation vmin = std::min(rec.vx, rec.vy);
    rec.strong_triangle = rec.vsum >= vmin;
    rec.equality_when_distinct = rec.vx == rec.vy || rec.vsum == vmin;
    return rec;
}

}  // namespace padyn
