#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/dynamics/evaluate.hpp"
#include "padyn/dynamics/spheres.hpp"
#include "padyn/error.hpp"
#include "padyn/padic/truncated.hpp"

namespace padyn {

/// v(x - center). When `exact` is false the difference vanished to working
/// precision and `v` is only a lower bound.
struct NormReading {
    Valuation v = Valuation::infinity();
    bool exact = true;
};

struct OrbitStep {
    NormReading to_x1;
    NormReading to_x2;
};

struct PoleHitRecord {
    std::size_t step = 0;  // index of the iterate that is a pole
    std::string point;
};

/// points[k] = f^k(x0); steps[k] holds the distances of points[k] to both fixed points.
template <class Num>
struct Orbit {
    std::vector<Num> points;
    std::vector<OrbitStep> steps;
    std::optional<PoleHitRecord> pole_hit;

    std::size_t iterations() const { return points.empty() ? 0 : points.size() - 1; }
};

using ExactOrbit = Orbit<Rational>;
using TruncatedOrbit = Orbit<TruncatedPadic>;

struct OrbitOptions {
    /// Exact iterates roughly double in height each step; refuse past this size.
    std::size_t max_bits = std::size_t{1} << 22;
};

namespace detail {

inline NormReading reading(const CanonicalMap& m, const Rational& x, const Rational& center) {
    return {valuation(x - center, m.prime()), true};
}

inline NormReading reading(const CanonicalMap& m, const TruncatedPadic& x, const Rational& center) {
    TruncatedPadic diff = x - TruncatedPadic::from_rational_absolute(center, m.prime(), x.absolute_precision());
    if (diff.is_zero()) return {Valuation(diff.absolute_precision()), false};
    return {Valuation(diff.valuation()), true};
}

inline void check_height(const Rational& x, const OrbitOptions& opts, std::size_t step) {
    std::size_t bits = mpz_sizeinbase(x.get_num().get_mpz_t(), 2) + mpz_sizeinbase(x.get_den().get_mpz_t(), 2);
    if (bits > opts.max_bits) {
        throw Unsupported("exact iterate " + std::to_string(step) + " needs " + std::to_string(bits) +
                          " bits; use truncated iteration for long orbits");
    }
}

inline void check_height(const TruncatedPadic&, const OrbitOptions&, std::size_t) {}

template <class Num>
Orbit<Num> iterate(const CanonicalMap& m, Num x, std::size_t n, const OrbitOptions& opts) {
    if (n < 1) throw InvalidInput("orbit length must be at least 1");
    Orbit<Num> out;
    const Rational x1 = m.x1(), x2 = m.x2();
    auto record = [&](const Num& y) {
        out.points.push_back(y);
        out.steps.push_back({reading(m, y, x1), reading(m, y, x2)});
    };
    record(x);
    for (std::size_t k = 1; k <= n; ++k) {
        try {
            x = eval_f(m, x);
        } catch (const PoleHit& hit) {
            out.pole_hit = PoleHitRecord{k - 1, hit.point()};
            break;
        }
        check_height(x, opts, k);
        record(x);
    }
    return out;
}

}  // namespace detail

/// n exact iterates of x0. A pole ends the orbit with a PoleHit record.
inline ExactOrbit orbit(const CanonicalMap& m, const Rational& x0, std::size_t n, const OrbitOptions& opts = {}) {
    return detail::iterate(m, x0, n, opts);
}

/// n iterates computed in Q_p to `precision` significant digits of x0.
inline TruncatedOrbit orbit_truncated(const CanonicalMap& m, const Rational& x0, std::size_t n,
                                      std::int64_t precision) {
    return detail::iterate(m, TruncatedPadic::from_rational(x0, m.prime(), precision), n, OrbitOptions{});
}

inline const NormReading& reading_for(const OrbitStep& step, Center c) {
    return c == Center::X1 ? step.to_x1 : step.to_x2;
}

/// Every recorded iterate lies (provably, at tracked precision) on the sphere.
template <class Num>
bool confined_to(const Orbit<Num>& o, const SphereSpec& s) {
    for (const OrbitStep& step : o.steps) {
        const NormReading& r = reading_for(step, s.center);
        if (!r.exact || r.v != Valuation(-s.radius_exp)) return false;
    }
    return !o.pole_hit.has_value();
}

}  // namespace padyn
