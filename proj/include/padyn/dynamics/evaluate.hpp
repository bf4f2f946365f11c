#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>

#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/error.hpp"
#include "padyn/padic/rational.hpp"
#include "padyn/padic/truncated.hpp"

namespace padyn {

/// x^2 + cx + a.
inline Rational denominator_at(const CanonicalMap& m, const Rational& x) { return x * x + m.c() * x + m.a(); }

/// f(x) exactly; PoleHit when x is a root of the denominator.
inline Rational eval_f(const CanonicalMap& m, const Rational& x) {
    Rational den = denominator_at(m, x);
    if (den == 0) throw PoleHit(x.get_str(), "f is undefined at the pole " + x.get_str());
    Rational out = m.a() * x / den;
    return out;
}

inline PadicRational eval_f(const CanonicalMap& m, const PadicRational& x) {
    if (x.prime() != m.prime()) throw PrimeMismatch("point and map measured by different primes");
    return {eval_f(m, x.value()), m.prime()};
}

namespace detail {

/// Map constants lifted far enough that they never limit the precision of a result.
inline TruncatedPadic lift_constant(const CanonicalMap& m, const Rational& value, const TruncatedPadic& like) {
    std::int64_t target = std::max<std::int64_t>(2 * std::abs(like.absolute_precision()), 8) +
                          std::abs(m.va()) + std::abs(m.vc()) + 8;
    return TruncatedPadic::from_rational_absolute(value, m.prime(), target);
}

}  // namespace detail

/// f(x) on a truncated point. A denominator indistinguishable from zero is a PoleHit.
inline TruncatedPadic eval_f(const CanonicalMap& m, const TruncatedPadic& x) {
    if (x.prime() != m.prime()) throw PrimeMismatch("point and map measured by different primes");
    TruncatedPadic a = detail::lift_constant(m, m.a(), x);
    TruncatedPadic c = detail::lift_constant(m, m.c(), x);
    TruncatedPadic den = x * x + c * x + a;
    if (den.is_zero()) {
        throw PoleHit(x.to_string(), "denominator of f vanishes to working precision at " + x.to_string());
    }
    return a * x / den;
}

/// f'(x) = a(a - x^2) / (x^2 + cx + a)^2.
inline Rational derivative(const CanonicalMap& m, const Rational& x) {
    Rational den = denominator_at(m, x);
    if (den == 0) throw PoleHit(x.get_str(), "f' is undefined at the pole " + x.get_str());
    Rational out = m.a() * (m.a() - x * x) / (den * den);
    return out;
}

inline TruncatedPadic derivative(const CanonicalMap& m, const TruncatedPadic& x) {
    TruncatedPadic a = detail::lift_constant(m, m.a(), x);
    TruncatedPadic c = detail::lift_constant(m, m.c(), x);
    TruncatedPadic den = x * x + c * x + a;
    if (den.is_zero()) throw PoleHit(x.to_string(), "f' denominator vanishes to working precision");
    return a * (a - x * x) / (den * den);
}

/// f'(x2) = 1 - c^2 / a.
inline Rational multiplier_at_x2(const CanonicalMap& m) {
    Rational out = 1 - m.c() * m.c() / m.a();
    return out;
}

}  // namespace padyn
