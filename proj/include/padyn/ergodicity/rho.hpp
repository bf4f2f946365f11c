#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padyn/dynamics/classify.hpp"
#include "padyn/dynamics/evaluate.hpp"
#include "padyn/dynamics/spheres.hpp"
#include "padyn/error.hpp"

namespace padyn {

inline void require_invariant(const CanonicalMap& m, const SphereSpec& s) {
    if (!is_invariant(m, s)) {
        auto ranges = invariant_spheres(m);
        const auto& range = s.center == Center::X1 ? ranges[0] : ranges[1];
        std::string bound = range.max_radius_exp ? "radius exponent <= " + std::to_string(*range.max_radius_exp)
                                                 : std::string("no invariant sphere about this center");
        throw NotApplicable("S_r(" + std::string(to_string(s.center)) + ") with r = p^" +
                            std::to_string(s.radius_exp) + " is not invariant (" + bound + ")");
    }
}

/// Radius exponent of rho(r) = |f(x) - x|_p, constant on an invariant sphere with r != |c|.
///   about x1: r^2|c|/(alpha beta) if r < |c|,  r^3/(alpha beta) if r > |c|
///   about x2, case 3: r
///   about x2, case 2: r|c|^2/(alpha beta) if r < |c|, r^3/(alpha beta) if r > |c|
/// NotApplicable when r = |c| with the other fixed point on a sphere through it.
inline std::int64_t rho(const CanonicalMap& m, const SphereSpec& s) {
    require_invariant(m, s);
    const AlphaBeta ab = m.alpha_beta();
    const std::int64_t e = s.radius_exp, vc = m.vc(), vab = ab.v_alpha + ab.v_beta;
    const int case_id = classify(m).case_id;
    if (s.center == Center::X2 && case_id == 3) return e;
    if (e == -vc) {
        throw NotApplicable("rho(r) depends on x when r = |c|_p; use displacement_table");
    }
    if (e > -vc) return 3 * e + vab;
    if (s.center == Center::X1) return 2 * e - vc + vab;
    return e - 2 * vc + vab;
}

struct Displacement {
    Rational x;
    Valuation v;  // v(f(x) - x)
};

/// |f(x) - x| at sampled points of the sphere; the only honest output when r = |c|.
inline std::vector<Displacement> displacement_table(const CanonicalMap& m, const SphereSpec& s,
                                                    const SamplingOptions& opts = {}) {
    std::vector<Displacement> out;
    for (const Rational& x : sample_sphere(m, s, opts)) {
        Rational fx = eval_f(m, x);
        out.push_back({x, valuation(fx - x, m.prime())});
    }
    return out;
}

/// Radius exponent of the minimal invariant ball of f on the sphere, which is rho(r).
inline std::int64_t minimal_invariant_ball(const CanonicalMap& m, const SphereSpec& s) { return rho(m, s); }

}  // namespace padyn
