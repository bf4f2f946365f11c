#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

#include "padyn/error.hpp"
#include "padyn/padic/rational.hpp"
#include "padyn/padic/squares.hpp"
#include "padyn/padic/truncated.hpp"

namespace padyn {

/// Pole norms alpha = p^-v_alpha <= beta = p^-v_beta of x^2 + cx + a.
struct AlphaBeta {
    std::int64_t v_alpha = 0;
    std::int64_t v_beta = 0;

    bool equal() const noexcept { return v_alpha == v_beta; }
    friend bool operator==(const AlphaBeta&, const AlphaBeta&) = default;
};

/// Newton polygon of x^2 + cx + a from the valuations of a and c alone.
/// Empty when the single-slope branch has odd v(a) (no root of the polygon's
/// slope lies in Q_p).
inline std::optional<AlphaBeta> newton_polygon_alpha_beta(std::int64_t va, std::int64_t vc) {
    if (2 * vc < va) return AlphaBeta{va - vc, vc};
    if (va % 2 != 0) return std::nullopt;
    return AlphaBeta{va / 2, va / 2};
}

/// The map f(x) = ax / (x^2 + cx + a) over Q_p with fixed points 0 and -c.
class CanonicalMap {
public:
    CanonicalMap(Prime p, Rational a, Rational c) : prime_(p), a_(std::move(a)), c_(std::move(c)) {
        a_.canonicalize();
        c_.canonicalize();
        if (a_ == 0) throw InvalidInput("a must be nonzero");
        if (c_ == 0) throw InvalidInput("c must be nonzero");
        va_ = valuation(a_, prime_).value();
        vc_ = valuation(c_, prime_).value();
        alpha_beta_ = newton_polygon_alpha_beta(va_, vc_);
        discriminant_square_ = discriminant() != 0 && is_square(discriminant(), prime_);
    }

    CanonicalMap(const PadicRational& a, const PadicRational& c) : CanonicalMap(a.prime(), a.value(), c.value()) {
        if (a.prime() != c.prime()) throw PrimeMismatch("a and c measured by different primes");
    }

    const Prime& prime() const noexcept { return prime_; }
    const Rational& a() const noexcept { return a_; }
    const Rational& c() const noexcept { return c_; }
    std::int64_t va() const noexcept { return va_; }
    std::int64_t vc() const noexcept { return vc_; }

    Rational x1() const { return Rational(0); }
    Rational x2() const { return Rational(-c_); }

    /// c^2 - 4a; its squareness decides whether the poles lie in Q_p.
    Rational discriminant() const { return c_ * c_ - 4 * a_; }
    bool discriminant_is_square() const noexcept { return discriminant_square_; }

    bool has_alpha_beta() const noexcept { return alpha_beta_.has_value(); }

    const AlphaBeta& alpha_beta() const {
        if (!alpha_beta_) {
            throw InconsistentParameters("v_p(a) = " + std::to_string(va_) +
                                         " is odd while 2 v_p(c) >= v_p(a): the poles are not in Q_" +
                                         std::to_string(prime_.value()));
        }
        return *alpha_beta_;
    }

private:
    Prime prime_;
    Rational a_;
    Rational c_;
    std::int64_t va_ = 0;
    std::int64_t vc_ = 0;
    std::optional<AlphaBeta> alpha_beta_;
    bool discriminant_square_ = false;
};

inline AlphaBeta alpha_beta(const CanonicalMap& m) { return m.alpha_beta(); }

enum class PoleForm { Rational, Truncated, Extension };

inline const char* to_string(PoleForm f) {
    switch (f) {
        case PoleForm::Rational: return "rational";
        case PoleForm::Truncated: return "truncated";
        case PoleForm::Extension: return "extension";
    }
    return "?";
}

/// Roots of x^2 + cx + a: exact when the discriminant is a rational square,
/// Hensel lifts when it is a square in Q_p only, absent otherwise.
struct Poles {
    PoleForm form = PoleForm::Extension;
    std::optional<std::pair<Rational, Rational>> exact;
    std::optional<std::pair<TruncatedPadic, TruncatedPadic>> lifted;
};

inline Poles poles(const CanonicalMap& m, std::int64_t precision = 32) {
    Poles out;
    Rational disc = m.discriminant();
    if (disc == 0) {
        Rational root = -m.c() / 2;
        out.form = PoleForm::Rational;
        out.exact = std::pair{root, root};
        return out;
    }
    if (auto s = exact_rational_sqrt(disc)) {
        out.form = PoleForm::Rational;
        out.exact = std::pair{Rational((-m.c() + *s) / 2), Rational((-m.c() - *s) / 2)};
        return out;
    }
    if (!m.discriminant_is_square()) return out;

    const Prime& p = m.prime();
    // Cancellation in -c +- s can cost up to |v(a) - 2 v(c)| digits; 2 costs one more at p = 2.
    std::int64_t guard = std::abs(m.va() - 2 * m.vc()) + std::abs(m.vc()) + 2;
    std::int64_t n = precision + guard;
    TruncatedPadic s = hensel_sqrt(disc, p, n);
    TruncatedPadic c = TruncatedPadic::from_rational(m.c(), p, n + guard);
    TruncatedPadic two = TruncatedPadic::from_rational(Rational(2), p, n + guard);
    out.form = PoleForm::Truncated;
    out.lifted = std::pair{(-c + s) / two, (-c - s) / two};
    return out;
}

}  // namespace padyn
