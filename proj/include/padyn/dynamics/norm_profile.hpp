#pragma once

#include <cstdint>
#include <vector>

#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/dynamics/evaluate.hpp"
#include "padyn/dynamics/spheres.hpp"

namespace padyn {

enum class ProfileRegime { BelowAlpha, BetweenAlphaBeta, AboveBeta };
enum class BoundKind { Equal, AtLeast };

inline const char* to_string(ProfileRegime r) {
    switch (r) {
        case ProfileRegime::BelowAlpha: return "below_alpha";
        case ProfileRegime::BetweenAlphaBeta: return "between_alpha_beta";
        case ProfileRegime::AboveBeta: return "above_beta";
    }
    return "?";
}

/// Predicted |f(x)|_p for |x|_p = p^radius_exp: equal to (or at least) p^image_exp.
struct NormImagePrediction {
    ProfileRegime regime = ProfileRegime::BelowAlpha;
    BoundKind bound = BoundKind::Equal;
    std::int64_t image_exp = 0;
};

/// |f(x)| = r for r < alpha, >= alpha for alpha <= r <= beta, |a|/r for r > beta.
inline NormImagePrediction norm_image_profile(const CanonicalMap& m, std::int64_t radius_exp) {
    const AlphaBeta ab = m.alpha_beta();
    if (radius_exp < -ab.v_alpha) return {ProfileRegime::BelowAlpha, BoundKind::Equal, radius_exp};
    if (radius_exp <= -ab.v_beta) return {ProfileRegime::BetweenAlphaBeta, BoundKind::AtLeast, -ab.v_alpha};
    return {ProfileRegime::AboveBeta, BoundKind::Equal, -m.va() - radius_exp};
}

struct NormProfileCheck {
    NormImagePrediction prediction;
    std::size_t sampled = 0;
    std::size_t poles_skipped = 0;
    std::vector<Rational> violations;

    bool holds() const { return violations.empty(); }
};

/// Checks the prediction on sampled points of S_r(0); sampled poles are skipped.
inline NormProfileCheck validate_norm_profile(const CanonicalMap& m, std::int64_t radius_exp,
                                              const SamplingOptions& opts = {}) {
    NormProfileCheck out;
    out.prediction = norm_image_profile(m, radius_exp);
    for (const Rational& x : sample_sphere(m, {Center::X1, radius_exp}, opts)) {
        Rational y;
        try {
            y = eval_f(m, x);
        } catch (const PoleHit&) {
            ++out.poles_skipped;
            continue;
        }
        ++out.sampled;
        std::int64_t image_exp = -valuation(y, m.prime()).value();
        bool ok = out.prediction.bound == BoundKind::Equal ? image_exp == out.prediction.image_exp
                                                           : image_exp >= out.prediction.image_exp;
        if (!ok) out.violations.push_back(x);
    }
    return out;
}

}  // namespace padyn
