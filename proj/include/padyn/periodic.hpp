#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/dynamics/classify.hpp"
#include "padyn/dynamics/evaluate.hpp"
#include "padyn/dynamics/spheres.hpp"
#include "padyn/ergodicity/rho.hpp"
#include "padyn/error.hpp"
#include "padyn/padic/squares.hpp"
#include "padyn/padic/truncated.hpp"
#include "padyn/polynomial.hpp"

namespace padyn {

using OrbitPoints = std::variant<std::vector<Rational>, std::vector<TruncatedPadic>>;

struct PeriodicOrbit {
    int period = 0;
    OrbitPoints points;
    /// v((f^n)'(y0)) by the chain rule.
    Valuation multiplier_valuation = 0;
    /// Exact multiplier, for rational orbits.
    std::optional<Rational> multiplier;
    /// Radius exponent of the smallest closed ball about y0 holding the orbit.
    std::optional<std::int64_t> containment_exp;

    bool exact() const { return std::holds_alternative<std::vector<Rational>>(points); }
    const std::vector<Rational>& exact_points() const { return std::get<std::vector<Rational>>(points); }
    const std::vector<TruncatedPadic>& truncated_points() const {
        return std::get<std::vector<TruncatedPadic>>(points);
    }
};

namespace detail {

inline Rational like(const Rational& value, const Rational&) { return value; }
inline TruncatedPadic like(const Rational& value, const TruncatedPadic& ref) {
    return TruncatedPadic::from_rational_absolute(value, ref.prime(), ref.absolute_precision());
}

inline Valuation known_valuation(const Rational& x, const Prime& p) { return valuation(x, p); }
inline Valuation known_valuation(const TruncatedPadic& x, const Prime&) { return Valuation(x.valuation()); }

/// Lower bound on v(x) that is certain at tracked precision.
inline Valuation valuation_floor(const Rational& x, const Prime& p) { return valuation(x, p); }
inline Valuation valuation_floor(const TruncatedPadic& x, const Prime&) {
    return x.is_zero() ? Valuation(x.absolute_precision()) : Valuation(x.valuation());
}

template <class Num>
PeriodicOrbit finish_orbit(const CanonicalMap& m, std::vector<Num> pts) {
    PeriodicOrbit out;
    out.period = static_cast<int>(pts.size());
    Num mult = derivative(m, pts[0]);
    for (std::size_t k = 1; k < pts.size(); ++k) mult = mult * derivative(m, pts[k]);
    if constexpr (std::is_same_v<Num, Rational>) {
        out.multiplier = mult;
        out.multiplier_valuation = valuation(mult, m.prime());
    } else {
        out.multiplier_valuation = mult.is_zero() ? Valuation::infinity() : Valuation(mult.valuation());
    }
    std::optional<std::int64_t> widest;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        Num d = pts[k] - pts[0];
        std::int64_t e = -valuation_floor(d, m.prime()).value();
        widest = widest ? std::max(*widest, e) : e;
    }
    out.containment_exp = widest;
    out.points = std::move(pts);
    return out;
}

}  // namespace detail

/// N_n / D_n = f^n(x) as polynomials, from N_1 = ax, D_1 = x^2 + cx + a.
inline std::pair<Polynomial, Polynomial> iterate_polynomials(const CanonicalMap& m, int n) {
    const Polynomial a{m.a()}, c{m.c()};
    Polynomial num = a * Polynomial::x();
    Polynomial den{m.a(), m.c(), Rational(1)};
    for (int k = 1; k < n; ++k) {
        Polynomial next_num = a * num * den;
        Polynomial next_den = num * num + c * num * den + a * den * den;
        num = std::move(next_num);
        den = std::move(next_den);
    }
    return {num, den};
}

/// Cleared numerator of (f^n(x) - x) / (f(x) - x); throws if the division is not exact.
inline Polynomial cleared_cycle_quotient(const CanonicalMap& m, int n) {
    auto [num1, den1] = iterate_polynomials(m, 1);
    auto [numn, denn] = iterate_polynomials(m, n);
    auto [q, r] = divmod(numn - Polynomial::x() * denn, num1 - Polynomial::x() * den1);
    if (!r.is_zero()) throw VerificationFailure("f(x) - x does not divide f^n(x) - x");
    return q;
}

/// The only 2-cycle factor is x^2 + 2cx + 2a: the cleared quotient equals a(x^2 + 2cx + 2a).
inline bool two_cycle_factor_is_unique(const CanonicalMap& m) {
    Polynomial expected = m.a() * Polynomial{Rational(2 * m.a()), Rational(2 * m.c()), Rational(1)};
    return cleared_cycle_quotient(m, 2) == expected;
}

enum class NoOrbitReason { NotSquare, Degenerate };

inline const char* to_string(NoOrbitReason r) { return r == NoOrbitReason::NotSquare ? "not_square" : "degenerate"; }

struct TwoPeriodicResult {
    Rational discriminant;  // c^2 - 2a
    std::optional<PeriodicOrbit> orbit;
    std::optional<NoOrbitReason> none_reason;
};

/**
 * The 2-cycle {-c + s, -c - s}, s^2 = c^2 - 2a, when c^2 - 2a is a nonzero
 * square in Q_p. Exact when c^2 - 2a is a rational square, otherwise Hensel
 * lifted to `precision` digits and verified to tracked precision.
 */
inline TwoPeriodicResult two_periodic(const CanonicalMap& m, std::int64_t precision = 32) {
    TwoPeriodicResult out;
    out.discriminant = m.c() * m.c() - 2 * m.a();
    if (out.discriminant == 0) {
        out.none_reason = NoOrbitReason::Degenerate;
        return out;
    }
    if (!is_square(out.discriminant, m.prime())) {
        out.none_reason = NoOrbitReason::NotSquare;
        return out;
    }

    if (auto s = exact_rational_sqrt(out.discriminant)) {
        Rational t1 = -m.c() + *s, t2 = -m.c() - *s;
        if (eval_f(m, t1) != t2 || eval_f(m, t2) != t1) throw VerificationFailure("exact 2-cycle check failed");
        out.orbit = detail::finish_orbit(m, std::vector<Rational>{t1, t2});
        return out;
    }

    const Prime& p = m.prime();
    std::int64_t guard = std::abs(m.vc()) + std::abs(m.va()) + 2;
    TruncatedPadic s = hensel_sqrt(out.discriminant, p, precision + guard);
    TruncatedPadic c = TruncatedPadic::from_rational(m.c(), p, precision + 2 * guard);
    TruncatedPadic t1 = -c + s, t2 = -c - s;
    std::int64_t separation = (t1 - t2).valuation();
    for (const auto& [from, to] : {std::pair{t1, t2}, std::pair{t2, t1}}) {
        TruncatedPadic diff = eval_f(m, from) - to;
        if (!diff.is_zero() || diff.absolute_precision() <= separation) {
            throw VerificationFailure("truncated 2-cycle check failed: f(t) - t' = " + diff.to_string());
        }
    }
    out.orbit = detail::finish_orbit(m, std::vector<TruncatedPadic>{t1, t2});
    return out;
}

/// a = h(q) = (3q^2 + 2q) / (6q^3 + 11q^2 + 6q + 1), c = q h(q) - 1.
struct ThreePeriodicFamily {
    Rational q, h, a, c;

    static Rational h_of(const Rational& q) {
        Rational den = 6 * q * q * q + 11 * q * q + 6 * q + 1;
        if (den == 0) throw InvalidInput("6q^3 + 11q^2 + 6q + 1 vanishes at q = " + q.get_str());
        Rational out = (3 * q * q + 2 * q) / den;
        return out;
    }

    static ThreePeriodicFamily make(const Rational& q) {
        if (q == 0 || q == -1 || q == Rational(-2, 3)) {
            throw InvalidInput("q = " + q.get_str() + " is excluded (q must avoid 0, -1, -2/3)");
        }
        ThreePeriodicFamily f;
        f.q = q;
        f.h = h_of(q);
        f.a = f.h;
        f.c = q * f.h - 1;
        return f;
    }

    /// (6q^3 + 11q^2 + 6q + 1) a - (3q^2 + 2q) = 0.
    bool defining_identity_holds() const {
        return (6 * q * q * q + 11 * q * q + 6 * q + 1) * a - (3 * q * q + 2 * q) == 0;
    }

    /// a^3 + 6(c+1)a^2 + (11c+9)(c+1)a + 3(2c+1)(c+1)^2 = 0.
    bool cubic_relation_holds() const {
        Rational v = a * a * a + 6 * (c + 1) * a * a + (11 * c + 9) * (c + 1) * a + 3 * (2 * c + 1) * (c + 1) * (c + 1);
        return v == 0;
    }
};

/// P(x) = x^6 + 6cx^5 + (11c^2+6a)x^4 + (6c^3+20ac)x^3 + (15ac^2+9a^2)x^2 + 12a^2 c x + 3a^3,
/// the cleared (f^3(x) - x)/(f(x) - x) up to the factor a^3.
inline Polynomial p6_polynomial(const CanonicalMap& m) {
    const Rational &a = m.a(), &c = m.c();
    return Polynomial{Rational(3 * a * a * a),
                      Rational(12 * a * a * c),
                      Rational(15 * a * c * c + 9 * a * a),
                      Rational(6 * c * c * c + 20 * a * c),
                      Rational(11 * c * c + 6 * a),
                      Rational(6 * c),
                      Rational(1)};
}

inline Rational p6_eval(const CanonicalMap& m, const Rational& x) { return p6_polynomial(m)(x); }

struct ThreePeriodicResult {
    ThreePeriodicFamily family;
    CanonicalMap map;
    PeriodicOrbit orbit;
    Rational p6_at_a;
};

/// The 3-cycle {a, f(a), f^2(a)} of the map built from q, verified exactly.
inline ThreePeriodicResult three_periodic_from_q(const Prime& p, const Rational& q) {
    ThreePeriodicFamily fam = ThreePeriodicFamily::make(q);
    CanonicalMap m(p, fam.a, fam.c);
    Rational y1 = eval_f(m, fam.a);
    Rational y2 = eval_f(m, y1);
    Rational back = eval_f(m, y2);
    if (y1 == fam.a) throw VerificationFailure("a is a fixed point, not a 3-cycle");
    if (back != fam.a) throw VerificationFailure("f^3(a) != a for q = " + q.get_str());
    Rational p6 = p6_eval(m, fam.a);
    if (p6 != 0) throw VerificationFailure("P(a) != 0 for q = " + q.get_str());
    return {fam, m, detail::finish_orbit(m, std::vector<Rational>{fam.a, y1, y2}), p6};
}

/// The sphere about x_i through a: |a|_p for x1, |a + c|_p = |h(q)(q+1) - 1|_p for x2.
inline SphereSpec family_sphere(const ThreePeriodicFamily& fam, const Prime& p, Center center) {
    Rational offset = center == Center::X1 ? fam.h : Rational(fam.h * (fam.q + 1) - 1);
    Valuation v = valuation(offset, p);
    if (v.is_infinite()) throw NotApplicable("a coincides with the center");
    return {center, -v.value()};
}

/// |h(q)|_p = r (about x1) or |h(q)(q+1) - 1|_p = r (about x2).
inline bool three_periodic_sphere_condition(const ThreePeriodicFamily& fam, const Prime& p, const SphereSpec& s) {
    Rational offset = s.center == Center::X1 ? fam.h : Rational(fam.h * (fam.q + 1) - 1);
    return valuation(offset, p) == Valuation(-s.radius_exp);
}

struct OrbitStructureReport {
    std::int64_t rho_exp = 0;
    std::optional<std::int64_t> containment_exp;
    Valuation multiplier_valuation = 0;
    std::size_t ball_checks = 0;
};

/**
 * Structure of a periodic orbit on an invariant sphere:
 *   1. every y_k lies in V_rho(r)(y0);
 *   2. |(f^n)'(y0)|_p = 1;
 *   3. f(S_rho(y_k)) lands in S_rho(y_{k+1}) for rho = rho(r) and rho(r)/p, on sampled points.
 * Any failure throws VerificationFailure.
 */
inline OrbitStructureReport verify_orbit_structure(const CanonicalMap& m, const PeriodicOrbit& orbit,
                                                   const SphereSpec& s, const SamplingOptions& opts = {8, std::nullopt}) {
    OrbitStructureReport rep;
    rep.rho_exp = rho(m, s);
    rep.containment_exp = orbit.containment_exp;
    rep.multiplier_valuation = orbit.multiplier_valuation;
    const Prime& p = m.prime();

    auto run = [&](const auto& pts) {
        using Num = std::decay_t<decltype(pts.front())>;
        for (const auto& y : pts) {
            if (detail::valuation_floor(y - detail::like(center_point(m, s.center), y), p) != Valuation(-s.radius_exp)) {
                throw VerificationFailure("orbit point is not on the given sphere");
            }
        }
        if (orbit.containment_exp && *orbit.containment_exp > rep.rho_exp) {
            throw VerificationFailure("orbit leaves the ball of radius rho(r) about y0");
        }
        if (orbit.multiplier_valuation != Valuation(0)) {
            throw VerificationFailure("periodic multiplier is not a unit");
        }
        auto units = sample_units(p, opts);
        for (std::int64_t e : {rep.rho_exp, rep.rho_exp - 1}) {
            Rational scale = prime_power(p, -e);
            for (std::size_t k = 0; k < pts.size(); ++k) {
                const auto& y = pts[k];
                const auto& next = pts[(k + 1) % pts.size()];
                for (const Rational& u : units) {
                    Num z = y + detail::like(scale * u, y);
                    Num image = eval_f(m, z) - next;
                    if (detail::known_valuation(image, p) != Valuation(-e)) {
                        throw VerificationFailure("f(S_rho(y_k)) leaves S_rho(y_{k+1}) at rho = p^" + std::to_string(e));
                    }
                    ++rep.ball_checks;
                }
            }
        }
    };
    std::visit(run, orbit.points);
    return rep;
}

struct QSweepEntry {
    Rational q, a, c;
    std::optional<int> case_id;
    bool poles_in_qp = false;
    SphereSpec sphere_x1;
    bool invariant_x1 = false;
    std::optional<SphereSpec> sphere_x2;
    bool invariant_x2 = false;
};

/// All admissible q = n/d with |n|, d <= height, and where the family's a lands.
inline std::vector<QSweepEntry> q_sweep(const Prime& p, long height) {
    std::vector<QSweepEntry> out;
    for (long d = 1; d <= height; ++d) {
        for (long n = -height; n <= height; ++n) {
            if (std::gcd(n, d) != 1) continue;
            Rational q(n, d);
            q.canonicalize();
            ThreePeriodicFamily fam;
            try {
                fam = ThreePeriodicFamily::make(q);
            } catch (const InvalidInput&) {
                continue;
            }
            if (fam.c == 0) continue;
            CanonicalMap m(p, fam.a, fam.c);
            QSweepEntry e;
            e.q = q;
            e.a = fam.a;
            e.c = fam.c;
            e.poles_in_qp = m.discriminant_is_square();
            e.sphere_x1 = family_sphere(fam, p, Center::X1);
            if (m.has_alpha_beta()) {
                e.case_id = classify(m).case_id;
                e.invariant_x1 = is_invariant(m, e.sphere_x1);
            }
            if (fam.a + fam.c != 0) {
                e.sphere_x2 = family_sphere(fam, p, Center::X2);
                e.invariant_x2 = m.has_alpha_beta() && is_invariant(m, *e.sphere_x2);
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

}  // namespace padyn
