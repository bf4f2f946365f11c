#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/dynamics/spheres.hpp"
#include "padyn/error.hpp"
#include "padyn/polynomial.hpp"

namespace padyn {

/// Odd- and even-index coefficient sums of numerator (A) and denominator (B).
struct Mod4Sums {
    Rational A1, A2, B1, B2;
    int a1 = 0, a2 = 0, b1 = 0, b2 = 0;  // residues mod 4
};

struct Mod4Verdict {
    bool ergodic = false;
    /// 1-4 for a direct match, 5 when a pattern matches with numerator and denominator swapped.
    std::optional<int> case_index;
    /// For case 5, which of patterns 1-4 matched after the swap.
    std::optional<int> swapped_pattern;
    Mod4Sums sums;
};

namespace detail {

inline bool is_two_adic_integer(const Rational& x) { return mpz_odd_p(x.get_den().get_mpz_t()) != 0; }

inline int mod4(const Rational& x) { return static_cast<int>(residue(x, Integer(4)).get_si()); }

inline Mod4Sums coefficient_sums(const Polynomial& num, const Polynomial& den) {
    Mod4Sums s;
    auto split = [](const Polynomial& f, Rational& odd, Rational& even) {
        odd = 0;
        even = 0;
        for (std::size_t i = 0; i < f.coefficients().size(); ++i) {
            if (!is_two_adic_integer(f.coefficients()[i])) {
                throw InvalidInput("coefficient " + f.coefficients()[i].get_str() + " is not a 2-adic integer");
            }
            (i % 2 == 1 ? odd : even) += f.coefficients()[i];
        }
    };
    split(num, s.A1, s.A2);
    split(den, s.B1, s.B2);
    s.a1 = mod4(s.A1);
    s.a2 = mod4(s.A2);
    s.b1 = mod4(s.B1);
    s.b2 = mod4(s.B2);
    return s;
}

/// The four residue patterns (A1, A2, B1, B2) mod 4 for which f/g is ergodic on 1 + 2Z_2.
inline std::optional<int> match_pattern(int a1, int a2, int b1, int b2) {
    static constexpr std::array<std::array<int, 4>, 4> patterns{{
        {1, 2, 0, 1},
        {3, 2, 0, 3},
        {1, 0, 2, 1},
        {3, 0, 2, 3},
    }};
    for (std::size_t k = 0; k < patterns.size(); ++k) {
        const auto& pt = patterns[k];
        if (pt[0] == a1 && pt[1] == a2 && pt[2] == b1 && pt[3] == b2) return static_cast<int>(k + 1);
    }
    return std::nullopt;
}

}  // namespace detail

/// Mod-4 ergodicity test for R = num/den on the unit sphere 1 + 2Z_2.
///
/// Coefficients must be 2-adic integers, and both polynomials must send
/// 1 + 2Z_2 into itself; that second condition is only checked on sampled units.
inline Mod4Verdict mod4_criterion(const Polynomial& num, const Polynomial& den, const SamplingOptions& opts = {}) {
    Mod4Verdict out;
    out.sums = detail::coefficient_sums(num, den);

    const Prime two(2);
    for (const Rational& t : sample_units(two, opts)) {
        Rational nt = num(t), dt = den(t);
        if (nt == 0 || dt == 0 || valuation(nt, two) != Valuation(0) || valuation(dt, two) != Valuation(0)) {
            throw InvalidInput("polynomials do not map 1 + 2Z_2 to itself (fails at t = " + t.get_str() + ")");
        }
    }

    const Mod4Sums& s = out.sums;
    if (auto k = detail::match_pattern(s.a1, s.a2, s.b1, s.b2)) {
        out.case_index = *k;
    } else if (auto k2 = detail::match_pattern(s.b1, s.b2, s.a1, s.a2)) {
        out.case_index = 5;
        out.swapped_pattern = *k2;
    }
    out.ergodic = out.case_index.has_value();
    return out;
}

/// g^-1 o f o g for g(t) = 2^-l t: t / ((2^-2l / a) t^2 + (2^-l c / a) t + 1).
struct RescaledMap {
    std::int64_t l = 0;
    Polynomial numerator;
    Polynomial denominator;

    Rational operator()(const Rational& t) const {
        Rational d = denominator(t);
        if (d == 0) throw PoleHit(t.get_str(), "rescaled map undefined at " + t.get_str());
        Rational out = numerator(t) / d;
        return out;
    }
};

/// Rescales f on S_{2^l}(0) to the unit sphere. Requires p = 2 and the
/// integrality bounds |2^-2l / a|_2 <= 1/4, |2^-l c / a|_2 <= 1/2.
inline RescaledMap rescale_to_unit(const CanonicalMap& m, std::int64_t l) {
    if (!m.prime().is_two()) throw NotApplicable("rescale_to_unit is defined for p = 2");
    const Prime& p = m.prime();
    Rational quad = prime_power(p, -2 * l) / m.a();
    Rational lin = prime_power(p, -l) * m.c() / m.a();
    if (valuation(quad, p) < Valuation(2) || valuation(lin, p) < Valuation(1)) {
        throw NotApplicable("radius 2^" + std::to_string(l) +
                            " violates the rescaling bounds; the sphere is not invariant");
    }
    return {l, Polynomial{Rational(0), Rational(1)}, Polynomial{Rational(1), lin, quad}};
}

}  // namespace padyn
