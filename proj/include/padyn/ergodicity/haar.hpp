#pragma once

#include <cstdint>
#include <string>

#include "padyn/dynamics/spheres.hpp"
#include "padyn/error.hpp"
#include "padyn/padic/rational.hpp"

namespace padyn {

/// Normalized Haar measure on S_r: mu(V_rho) = p rho / ((p - 1) r).
struct HaarMeasureContext {
    Prime p;
    SphereSpec sphere;

    /// Mass of a ball of radius p^ball_exp inside the sphere.
    Rational measure(std::int64_t ball_exp) const {
        if (ball_exp >= sphere.radius_exp) {
            throw NotApplicable("a ball of radius p^" + std::to_string(ball_exp) +
                                " is not contained in a sphere of radius p^" + std::to_string(sphere.radius_exp));
        }
        Rational out = prime_power(p, 1 + ball_exp - sphere.radius_exp) / (p.value() - 1);
        return out;
    }

    /// The sphere is the disjoint union of (p - 1) p^(k-1) balls of radius r p^-k.
    Rational sphere_measure(std::int64_t k = 1) const {
        Rational balls = Rational(p.power(k - 1)) * (p.value() - 1);
        Rational out = balls * measure(sphere.radius_exp - k);
        return out;
    }
};

inline Rational haar_measure(const HaarMeasureContext& ctx, std::int64_t ball_exp) { return ctx.measure(ball_exp); }

}  // namespace padyn
