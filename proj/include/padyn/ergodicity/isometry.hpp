#pragma once

#include <string>
#include <vector>

#include "padyn/dynamics/evaluate.hpp"
#include "padyn/dynamics/spheres.hpp"
#include "padyn/ergodicity/rho.hpp"
#include "padyn/error.hpp"

namespace padyn {

/// One sampled pair. f(x) - f(y) = a(x - y)(a - xy) / (D(x) D(y)), so the
/// distance factor is p^-(numerator_v - denominator_v).
struct IsometryPair {
    Rational x, y;
    Valuation before = Valuation::infinity();  // v(x - y)
    Valuation after = Valuation::infinity();   // v(f(x) - f(y))
    Valuation numerator_v = 0;                 // v(a) + v(a - xy)
    Valuation denominator_v = 0;               // v(D(x)) + v(D(y))
};

struct IsometryRecord {
    SphereSpec sphere;
    std::vector<IsometryPair> pairs;
};

/// Checks |f(x) - f(y)| = |x - y| on all pairs of sampled points of an invariant
/// sphere. Any violation throws VerificationFailure naming the pair.
inline IsometryRecord isometry_check(const CanonicalMap& m, const SphereSpec& s, const SamplingOptions& opts = {}) {
    require_invariant(m, s);
    const Prime& p = m.prime();
    std::vector<Rational> pts = sample_sphere(m, s, opts);
    std::vector<Rational> images;
    for (const Rational& x : pts) images.push_back(eval_f(m, x));

    IsometryRecord rec{s, {}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Rational &x = pts[i], &y = pts[j];
            IsometryPair pair{x, y, valuation(x - y, p), valuation(images[i] - images[j], p),
                              valuation(m.a(), p) + valuation(m.a() - x * y, p),
                              valuation(denominator_at(m, x), p) + valuation(denominator_at(m, y), p)};
            if (pair.before != pair.after || pair.numerator_v != pair.denominator_v) {
                throw VerificationFailure("isometry fails at x = " + x.get_str() + ", y = " + y.get_str());
            }
            rec.pairs.push_back(std::move(pair));
        }
    }
    return rec;
}

}  // namespace padyn
