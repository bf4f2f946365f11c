#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/dynamics/evaluate.hpp"
#include "padyn/dynamics/spheres.hpp"
#include "padyn/error.hpp"

namespace padyn {

enum class FixedPointKind { Attracting, Indifferent, Repelling };

inline const char* to_string(FixedPointKind k) {
    switch (k) {
        case FixedPointKind::Attracting: return "attracting";
        case FixedPointKind::Indifferent: return "indifferent";
        case FixedPointKind::Repelling: return "repelling";
    }
    return "?";
}

/// Kind from the multiplier valuation: |lambda| = p^-v.
inline FixedPointKind kind_from_multiplier(const Valuation& v) {
    if (v > Valuation(0)) return FixedPointKind::Attracting;
    if (v == Valuation(0)) return FixedPointKind::Indifferent;
    return FixedPointKind::Repelling;
}

enum class RegionKind { SiegelDisk, Basin, RepellingBall };

inline const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::SiegelDisk: return "siegel_disk";
        case RegionKind::Basin: return "basin";
        case RegionKind::RepellingBall: return "repelling_ball";
    }
    return "?";
}

/// The open ball U_r(center), r = p^radius_exp, playing the role `kind`.
struct Region {
    RegionKind kind = RegionKind::SiegelDisk;
    Center center = Center::X1;
    std::int64_t radius_exp = 0;
};

struct FixedPointReport {
    Center which = Center::X1;
    Rational point;
    Rational multiplier;
    Valuation multiplier_valuation = 0;
    FixedPointKind kind = FixedPointKind::Indifferent;
    Region region;
    int case_id = 1;
    bool superattracting = false;
};

struct Classification {
    AlphaBeta alpha_beta;
    FixedPointReport x1;
    FixedPointReport x2;
    int case_id = 1;
    /// Case 2: SI(x2) = SI(x1). Case 3: the two disks are disjoint.
    bool shared_siegel_disk = false;
};

/**
 * Fixed-point classification of f(x) = ax/(x^2+cx+a) by exact exponent
 * comparisons of |c|, alpha, beta and |a - c^2|:
 *   case 2: |c| < alpha = beta              x2 indifferent, SI(x2) = SI(x1)
 *   case 3: |c| = alpha = beta, |a-c^2| = alpha^2   x2 indifferent, SI(x2) = U_alpha(x2)
 *   case 4: |c| = alpha = beta, |a-c^2| < alpha^2   x2 attracting, A(x2) = U_alpha(x2)
 *   case 5: alpha < beta                    x2 repelling on U_beta(x2)
 * x1 = 0 always has multiplier 1 and SI(x1) = U_alpha(0).
 */
inline Classification classify(const CanonicalMap& m) {
    const AlphaBeta ab = m.alpha_beta();
    const Prime& p = m.prime();
    Classification out;
    out.alpha_beta = ab;

    out.x1.which = Center::X1;
    out.x1.point = m.x1();
    out.x1.multiplier = 1;
    out.x1.multiplier_valuation = 0;
    out.x1.kind = FixedPointKind::Indifferent;
    out.x1.region = {RegionKind::SiegelDisk, Center::X1, -ab.v_alpha};
    out.x1.case_id = 1;

    FixedPointReport& x2 = out.x2;
    x2.which = Center::X2;
    x2.point = m.x2();
    x2.multiplier = multiplier_at_x2(m);
    x2.multiplier_valuation = valuation(x2.multiplier, p);
    x2.kind = kind_from_multiplier(x2.multiplier_valuation);
    x2.superattracting = x2.multiplier == 0;

    FixedPointKind expected;
    if (!ab.equal()) {
        out.case_id = 5;
        expected = FixedPointKind::Repelling;
        x2.region = {RegionKind::RepellingBall, Center::X2, -ab.v_beta};
    } else if (m.vc() > ab.v_alpha) {
        out.case_id = 2;
        expected = FixedPointKind::Indifferent;
        x2.region = {RegionKind::SiegelDisk, Center::X2, -ab.v_alpha};
        out.shared_siegel_disk = true;
    } else if (m.vc() == ab.v_alpha) {
        Valuation gap = valuation(m.a() - m.c() * m.c(), p);
        if (gap == Valuation(2 * ab.v_alpha)) {
            out.case_id = 3;
            expected = FixedPointKind::Indifferent;
            x2.region = {RegionKind::SiegelDisk, Center::X2, -ab.v_alpha};
        } else if (gap > Valuation(2 * ab.v_alpha)) {
            out.case_id = 4;
            expected = FixedPointKind::Attracting;
            x2.region = {RegionKind::Basin, Center::X2, -ab.v_alpha};
        } else {
            throw VerificationFailure("|a - c^2| exceeds alpha^2, contradicting |a| = alpha^2 and |c| = alpha");
        }
    } else {
        throw VerificationFailure("|c| > alpha = beta contradicts the Newton polygon");
    }
    x2.case_id = out.case_id;
    if (x2.kind != expected) {
        throw VerificationFailure("multiplier norm of x2 disagrees with case " + std::to_string(out.case_id));
    }
    if (out.case_id == 5 && x2.multiplier_valuation != Valuation(ab.v_beta - ab.v_alpha)) {
        throw VerificationFailure("case 5 multiplier norm is not beta/alpha");
    }
    return out;
}

/// All r = p^e with e <= max_radius_exp; empty when no sphere about the center is invariant.
struct InvariantSphereRange {
    Center center = Center::X1;
    std::optional<std::int64_t> max_radius_exp;
};

/// S_r(x1) is invariant iff r < alpha; S_r(x2) iff r < alpha in cases 2 and 3.
inline std::vector<InvariantSphereRange> invariant_spheres(const CanonicalMap& m) {
    Classification cls = classify(m);
    std::int64_t below_alpha = -cls.alpha_beta.v_alpha - 1;
    InvariantSphereRange around_x1{Center::X1, below_alpha};
    InvariantSphereRange around_x2{Center::X2, std::nullopt};
    if (cls.case_id == 2 || cls.case_id == 3) around_x2.max_radius_exp = below_alpha;
    return {around_x1, around_x2};
}

inline bool is_invariant(const CanonicalMap& m, const SphereSpec& s) {
    for (const auto& range : invariant_spheres(m)) {
        if (range.center == s.center) return range.max_radius_exp && s.radius_exp <= *range.max_radius_exp;
    }
    return false;
}

/// Concrete invariant spheres: the `count` largest radii about each center.
inline std::vector<SphereSpec> largest_invariant_spheres(const CanonicalMap& m, std::int64_t count) {
    std::vector<SphereSpec> out;
    for (const auto& range : invariant_spheres(m)) {
        if (!range.max_radius_exp) continue;
        for (std::int64_t k = 0; k < count; ++k) out.push_back({range.center, *range.max_radius_exp - k});
    }
    return out;
}

}  // namespace padyn
