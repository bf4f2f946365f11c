#pragma once

#include <optional>
#include <string>

#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/error.hpp"
#include "padyn/padic/rational.hpp"
#include "padyn/polynomial.hpp"

namespace padyn {

/// f(x) = (ax + b) / (x^2 + cx + d), a != 0.
struct GeneralMap {
    Prime p;
    Rational a, b, c, d;

    GeneralMap(Prime prime, Rational a_, Rational b_, Rational c_, Rational d_)
        : p(prime), a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (a == 0) throw InvalidInput("a must be nonzero");
    }

    Rational operator()(const Rational& x) const {
        Rational den = x * x + c * x + d;
        if (den == 0) throw PoleHit(x.get_str(), "general map undefined at " + x.get_str());
        Rational out = (a * x + b) / den;
        return out;
    }
};

/// x^3 + cx^2 + (d - a)x - b, whose roots are the fixed points.
inline Polynomial fixed_point_cubic(const GeneralMap& m) {
    return Polynomial{Rational(-m.b), Rational(m.d - m.a), m.c, Rational(1)};
}

enum class FixedPointPattern { ThreeDistinctOrIrrational, DoubleRoot, TripleRoot };

inline const char* to_string(FixedPointPattern f) {
    switch (f) {
        case FixedPointPattern::ThreeDistinctOrIrrational: return "no_repeated_root";
        case FixedPointPattern::DoubleRoot: return "double_root";
        case FixedPointPattern::TripleRoot: return "triple_root";
    }
    return "?";
}

/// Degree of gcd(cubic, cubic') over Q: 0 none, 1 double root, 2 triple root.
inline FixedPointPattern fixed_point_pattern(const GeneralMap& m) {
    Polynomial cubic = fixed_point_cubic(m);
    long g = gcd(cubic, cubic.derivative()).degree();
    if (g == 1) return FixedPointPattern::DoubleRoot;
    if (g == 2) return FixedPointPattern::TripleRoot;
    return FixedPointPattern::ThreeDistinctOrIrrational;
}

/// The simple root x1 and double root x2 of the fixed-point cubic.
struct DoubleRoot {
    Rational x1;
    Rational x2;
};

/// Present exactly when the cubic factors as (x - x1)(x - x2)^2 with x1 != x2.
/// A repeated root of a rational cubic is always rational: it is the root of
/// the linear gcd with the derivative.
inline std::optional<DoubleRoot> find_double_root(const GeneralMap& m) {
    Polynomial cubic = fixed_point_cubic(m);
    Polynomial g = gcd(cubic, cubic.derivative());
    if (g.degree() != 1) return std::nullopt;
    Rational x2 = -g.coefficient(0);
    Rational x1 = -m.c - 2 * x2;
    return DoubleRoot{x1, x2};
}

struct ConjugationResult {
    Rational x1, x2;
    /// (h^-1 o f o h)(t) = (-x2 t^2 + B t) / (t^2 + D t + B) for h(t) = t + x2.
    Rational B, D;
    /// Only for x2 = 0, where the conjugate is ax/(x^2+cx+a).
    std::optional<CanonicalMap> canonical;

    Rational conjugate_at(const Rational& t) const {
        Rational den = t * t + D * t + B;
        if (den == 0) throw PoleHit(t.get_str(), "conjugated map undefined at " + t.get_str());
        Rational out = (-x2 * t * t + B * t) / den;
        return out;
    }
};

/// Conjugates a map with a double fixed point by the shift h(t) = t + x2.
/// The x2 != 0 branch returns B and D without a canonical map.
inline ConjugationResult conjugate(const GeneralMap& m) {
    auto roots = find_double_root(m);
    if (!roots) {
        throw Unsupported(std::string("fixed-point cubic has no rational double root (") +
                          to_string(fixed_point_pattern(m)) + ")");
    }
    const Rational& x2 = roots->x2;
    ConjugationResult out;
    out.x1 = roots->x1;
    out.x2 = x2;
    out.B = x2 * x2 + m.c * x2 + m.d;
    out.D = 2 * x2 + m.c;
    if (x2 == 0) {
        if (out.B != m.d || out.B != m.a || out.D != m.c) {
            throw VerificationFailure("x2 = 0 but B = d = a, D = c fails");
        }
        out.canonical.emplace(m.p, out.B, out.D);
    }
    return out;
}

}  // namespace padyn
