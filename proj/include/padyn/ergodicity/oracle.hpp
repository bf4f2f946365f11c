#pragma once

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "padyn/dynamics/evaluate.hpp"
#include "padyn/dynamics/spheres.hpp"
#include "padyn/ergodicity/rho.hpp"
#include "padyn/error.hpp"

namespace padyn {

/// Cycle structure of f acting on the balls of radius r p^-level in S_r.
struct OracleLevel {
    std::int64_t level = 0;
    std::size_t ball_count = 0;
    std::size_t cycle_count = 0;
    std::vector<std::size_t> cycle_lengths;  // sorted descending
};

struct OracleResult {
    SphereSpec sphere;
    std::vector<OracleLevel> levels;

    /// A single cycle at every level.
    bool ergodic() const {
        for (const auto& l : levels)
            if (l.cycle_count != 1) return false;
        return true;
    }
};

inline std::int64_t default_oracle_depth(const Prime& p) { return p.is_two() ? 8 : 5; }

/**
 * The permutation f induces on balls of radius r p^-level inside S_r(center).
 *
 * Balls are indexed by the unit residues u mod p^level (ascending), with
 * representative center + p^-e u. Each ball is probed at u and u + p^level;
 * both images must land in the same ball on the sphere.
 */
inline std::vector<std::size_t> induced_permutation(const CanonicalMap& m, const SphereSpec& s, std::int64_t level) {
    const Prime& p = m.prime();
    if (level < 1) throw InvalidInput("oracle level must be at least 1");
    const Integer modulus = p.power(level);
    if (modulus > Integer(1L << 22)) throw InvalidInput("oracle level too deep: p^level exceeds 2^22");
    const std::size_t size = modulus.get_ui();
    const Rational center = center_point(m, s.center);
    const Rational scale = prime_power(p, -s.radius_exp);
    const Rational inv_scale = prime_power(p, s.radius_exp);

    std::vector<std::int64_t> index(size, -1);
    std::vector<unsigned long> units;
    for (unsigned long u = 1; u < size; ++u) {
        if (u % p.ulong() == 0) continue;
        index[u] = static_cast<std::int64_t>(units.size());
        units.push_back(u);
    }

    auto image_index = [&](const Rational& x) -> std::int64_t {
        Rational w = (eval_f(m, x) - center) * inv_scale;
        if (w == 0 || valuation(w, p) != Valuation(0)) {
            throw VerificationFailure("f maps " + x.get_str() + " off the sphere");
        }
        return index[residue(w, modulus).get_ui()];
    };

    std::vector<std::size_t> perm(units.size());
    std::vector<bool> hit(units.size(), false);
    for (std::size_t i = 0; i < units.size(); ++i) {
        Rational u(static_cast<long>(units[i]));
        std::int64_t j = image_index(center + scale * u);
        std::int64_t j2 = image_index(center + scale * (u + Rational(modulus)));
        if (j != j2) throw VerificationFailure("induced ball map is not well defined at level " + std::to_string(level));
        if (hit[static_cast<std::size_t>(j)]) {
            throw VerificationFailure("induced ball map is not injective at level " + std::to_string(level));
        }
        hit[static_cast<std::size_t>(j)] = true;
        perm[i] = static_cast<std::size_t>(j);
    }
    return perm;
}

inline std::vector<std::size_t> cycle_lengths(const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> out;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Brute-force cycle structure on levels 1..depth of an invariant sphere.
inline OracleResult residue_cycle_oracle(const CanonicalMap& m, const SphereSpec& s, std::int64_t depth) {
    require_invariant(m, s);
    if (depth < 2) throw InvalidInput("oracle depth must be at least 2");
    OracleResult out{s, {}};
    for (std::int64_t level = 1; level <= depth; ++level) {
        auto lengths = cycle_lengths(induced_permutation(m, s, level));
        std::size_t balls = 0;
        for (auto len : lengths) balls += len;
        out.levels.push_back({level, balls, lengths.size(), std::move(lengths)});
    }
    return out;
}

/// CSV with header "level,ball_count,cycle_count,cycle_lengths"; lengths joined by ';'.
inline std::string oracle_csv(const OracleResult& r) {
    std::ostringstream out;
    out << "level,ball_count,cycle_count,cycle_lengths\n";
    for (const auto& l : r.levels) {
        out << l.level << ',' << l.ball_count << ',' << l.cycle_count << ',';
        for (std::size_t i = 0; i < l.cycle_lengths.size(); ++i) out << (i ? ";" : "") << l.cycle_lengths[i];
        out << '\n';
    }
    return out.str();
}

/// Minimality of the ball of radius rho(r): every such ball is fixed by f,
/// and no ball of radius rho(r)/p is.
struct MinimalBallCheck {
    std::int64_t rho_exp = 0;
    bool balls_at_rho_fixed = false;
    bool no_fixed_ball_below = false;

    bool holds() const { return balls_at_rho_fixed && no_fixed_ball_below; }
};

inline MinimalBallCheck verify_minimal_ball(const CanonicalMap& m, const SphereSpec& s) {
    MinimalBallCheck out;
    out.rho_exp = minimal_invariant_ball(m, s);
    std::int64_t level = s.radius_exp - out.rho_exp;  // balls of radius rho(r) sit at this level
    if (level < 0) throw VerificationFailure("rho(r) exceeds r on an invariant sphere");

    out.balls_at_rho_fixed = true;
    if (level >= 1) {
        auto perm = induced_permutation(m, s, level);
        for (std::size_t i = 0; i < perm.size(); ++i) out.balls_at_rho_fixed &= perm[i] == i;
    }
    auto below = induced_permutation(m, s, level + 1);
    out.no_fixed_ball_below = true;
    for (std::size_t i = 0; i < below.size(); ++i) out.no_fixed_ball_below &= below[i] != i;
    return out;
}

}  // namespace padyn
