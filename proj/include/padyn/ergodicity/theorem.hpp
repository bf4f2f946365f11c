#pragma once

#include <optional>
#include <string>

#include "padyn/dynamics/classify.hpp"
#include "padyn/ergodicity/mod4.hpp"
#include "padyn/ergodicity/oracle.hpp"
#include "padyn/ergodicity/rho.hpp"

namespace padyn {

enum class Verdict { Ergodic, NotErgodic };

enum class VerdictReason {
    PGe3Rule,            // never ergodic for p >= 3
    RadiusRule,          // p = 2: decided by |c| = beta and r = alpha/2 (x1), r != 2 rho(r) (x2)
    FixedPointInSphere,  // r = |c|: the other fixed point lies on the sphere
    Mod4Case,
    Oracle,
};

inline const char* to_string(Verdict v) { return v == Verdict::Ergodic ? "ergodic" : "notErgodic"; }

inline const char* to_string(VerdictReason r) {
    switch (r) {
        case VerdictReason::PGe3Rule: return "pGe3Rule";
        case VerdictReason::RadiusRule: return "radiusRule";
        case VerdictReason::FixedPointInSphere: return "fixedPointInSphere";
        case VerdictReason::Mod4Case: return "mod4Case";
        case VerdictReason::Oracle: return "oracle";
    }
    return "?";
}

struct ErgodicityVerdict {
    SphereSpec sphere;
    Verdict verdict = Verdict::NotErgodic;
    VerdictReason reason = VerdictReason::PGe3Rule;
    std::optional<int> mod4_case;
    std::optional<bool> oracle_agreement;
};

/// Ergodicity of f on an invariant sphere with respect to normalized Haar measure.
///   p >= 3: not ergodic.
///   p = 2, about x1: ergodic iff |c| = beta and r = alpha/2.
///   p = 2, about x2: not ergodic; r = 2 rho(r) fails (case 3 has rho(r) = r).
inline ErgodicityVerdict ergodicity_theorem(const CanonicalMap& m, const SphereSpec& s) {
    require_invariant(m, s);
    ErgodicityVerdict out;
    out.sphere = s;
    if (!m.prime().is_two()) {
        out.reason = VerdictReason::PGe3Rule;
        return out;
    }
    const AlphaBeta ab = m.alpha_beta();
    out.reason = VerdictReason::RadiusRule;
    if (s.center == Center::X1) {
        bool ergodic = m.vc() == ab.v_beta && s.radius_exp == -ab.v_alpha - 1;
        out.verdict = ergodic ? Verdict::Ergodic : Verdict::NotErgodic;
        if (s.radius_exp == -m.vc()) out.reason = VerdictReason::FixedPointInSphere;
        return out;
    }
    if (classify(m).case_id == 2 && s.radius_exp == -m.vc()) {
        out.reason = VerdictReason::FixedPointInSphere;
        return out;
    }
    if (rho(m, s) == s.radius_exp - 1) {
        throw VerificationFailure("r = 2 rho(r) on a sphere about x2");
    }
    return out;
}

/// Verdict from the theorem, the mod-4 test on the rescaled map (p = 2, about x1)
/// and the residue oracle.
struct CrossCheckedVerdict {
    ErgodicityVerdict verdict;
    std::optional<RescaledMap> rescaled;
    std::optional<Mod4Verdict> mod4;
    OracleResult oracle;

    bool agree() const {
        bool theorem = verdict.verdict == Verdict::Ergodic;
        if (mod4 && mod4->ergodic != theorem) return false;
        return oracle.ergodic() == theorem;
    }
};

inline CrossCheckedVerdict ergodicity_cross_check(const CanonicalMap& m, const SphereSpec& s, std::int64_t depth) {
    CrossCheckedVerdict out{ergodicity_theorem(m, s), std::nullopt, std::nullopt, residue_cycle_oracle(m, s, depth)};
    if (m.prime().is_two() && s.center == Center::X1) {
        out.rescaled = rescale_to_unit(m, s.radius_exp);
        out.mod4 = mod4_criterion(out.rescaled->numerator, out.rescaled->denominator);
        out.verdict.mod4_case = out.mod4->case_index;
    }
    out.verdict.oracle_agreement = out.agree();
    return out;
}

/// As ergodicity_cross_check, but a disagreement throws.
inline CrossCheckedVerdict require_agreement(const CanonicalMap& m, const SphereSpec& s, std::int64_t depth) {
    CrossCheckedVerdict out = ergodicity_cross_check(m, s, depth);
    if (!out.agree()) {
        throw VerificationFailure("ergodicity theorem and residue oracle disagree on S_r(" +
                                  std::string(to_string(s.center)) + "), r = p^" + std::to_string(s.radius_exp));
    }
    return out;
}

}  // namespace padyn
