#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padyn/ergodicity/haar.hpp"
#include "padyn/ergodicity/isometry.hpp"
#include "padyn/ergodicity/mod4.hpp"
#include "padyn/ergodicity/oracle.hpp"
#include "padyn/ergodicity/rho.hpp"
#include "padyn/ergodicity/theorem.hpp"

using namespace padyn;

namespace {

Rational q(long n, long d = 1) {
    Rational out(n, d);
    out.canonicalize();
    return out;
}

CanonicalMap map(long p, Rational a, Rational c) { return CanonicalMap(Prime(p), a, c); }

const CanonicalMap& two_map() {
    static const CanonicalMap m = map(2, q(2), q(1));
    return m;
}

}  // namespace

TEST(Rho, WorkedValues) {
    // r = 1/4 < |c| = 1: rho = r^2 |c| / (alpha beta) = (1/16) / (1/2) = 1/8
    EXPECT_EQ(rho(two_map(), {Center::X1, -2}), -3);
    auto case3 = map(5, q(3), q(1));
    for (std::int64_t e = -1; e >= -4; --e) EXPECT_EQ(rho(case3, {Center::X2, e}), e);
}

TEST(Rho, Errors) {
    EXPECT_THROW(rho(two_map(), {Center::X1, -1}), NotApplicable);   // not invariant
    EXPECT_THROW(rho(two_map(), {Center::X2, -2}), NotApplicable);   // x2 spheres are not invariant here
    auto case2 = map(5, q(-1), q(5));
    EXPECT_THROW(rho(case2, {Center::X1, -1}), NotApplicable);       // r = |c|
}

TEST(Rho, MatchesSampledDisplacement) {
    struct Case {
        long p;
        Rational a, c;
    };
    for (const auto& k : {Case{2, q(2), q(1)}, Case{5, q(3), q(1)}, Case{5, q(-1), q(5)}, Case{3, q(-2), q(1)},
                          Case{3, q(3), q(1)}, Case{3, q(9, 2), q(3)}}) {
        auto m = map(k.p, k.a, k.c);
        for (const SphereSpec& s : largest_invariant_spheres(m, 4)) {
            std::int64_t predicted;
            try {
                predicted = rho(m, s);
            } catch (const NotApplicable&) {
                continue;
            }
            for (const auto& d : displacement_table(m, s)) {
                EXPECT_EQ(d.v, Valuation(-predicted)) << "p=" << k.p << " x=" << d.x;
            }
        }
    }
}

TEST(Isometry, WorkedPairs) {
    auto m = two_map();
    SphereSpec s{Center::X1, -2};
    Rational x = q(4), y = q(12);  // unit multiples 1 and 3 of p^-e, |x| = |y| = 1/4
    EXPECT_EQ(valuation(eval_f(m, x) - eval_f(m, y), m.prime()), valuation(x - y, m.prime()));
    EXPECT_EQ(eval_f(m, x) - eval_f(m, x), 0);
    auto rec = isometry_check(m, s);
    EXPECT_EQ(rec.pairs.size(), 32u * 31u / 2u);
}

TEST(Isometry, AllInvariantSpheres) {
    for (auto [p, a, c] : {std::tuple{5L, q(3), q(1)}, std::tuple{5L, q(-1), q(5)}, std::tuple{3L, q(-2), q(1)},
                           std::tuple{3L, q(3), q(1)}, std::tuple{2L, q(2), q(1)}}) {
        auto m = map(p, a, c);
        for (const SphereSpec& s : largest_invariant_spheres(m, 3)) {
            auto rec = isometry_check(m, s, {12, std::nullopt});
            for (const auto& pair : rec.pairs) EXPECT_EQ(pair.before, pair.after);
        }
    }
}

TEST(Isometry, RejectsNonInvariantSphere) { EXPECT_THROW(isometry_check(two_map(), {Center::X1, 0}), NotApplicable); }

TEST(MinimalBall, WorkedValues) {
    EXPECT_EQ(minimal_invariant_ball(two_map(), {Center::X1, -2}), -3);
    EXPECT_EQ(minimal_invariant_ball(map(5, q(3), q(1)), {Center::X2, -2}), -2);
}

TEST(MinimalBall, OracleConfirmsMinimality) {
    for (std::int64_t e = -2; e >= -6; --e) {
        auto check = verify_minimal_ball(two_map(), {Center::X1, e});
        EXPECT_TRUE(check.holds()) << e;
    }
    auto check = verify_minimal_ball(map(5, q(3), q(1)), {Center::X2, -1});
    EXPECT_TRUE(check.holds());
    check = verify_minimal_ball(map(3, q(-2), q(1)), {Center::X1, -1});
    EXPECT_TRUE(check.holds());
}

TEST(Haar, Normalization) {
    HaarMeasureContext two{Prime(2), {Center::X1, -2}};
    EXPECT_EQ(two.measure(-3), 1);
    EXPECT_EQ(two.sphere_measure(1), 1);
    EXPECT_EQ(two.sphere_measure(4), 1);
    HaarMeasureContext three{Prime(3), {Center::X1, 0}};
    EXPECT_EQ(haar_measure(three, -1), q(1, 2));
    EXPECT_EQ(three.sphere_measure(3), 1);
    EXPECT_THROW(three.measure(0), NotApplicable);
}

TEST(Haar, ResidueCounting) {
    // Unit residues mod p^k on S_1(0): each of the (p-1)p^(k-1) classes carries the same mass.
    for (long p : {2L, 3L, 5L}) {
        HaarMeasureContext ctx{Prime(p), {Center::X1, 0}};
        for (unsigned k = 1; k <= 4; ++k) {
            long m = oracle::pow(p, k).get_si(), units = 0;
            for (long u = 0; u < m; ++u) units += (u % p != 0);
            EXPECT_EQ(ctx.measure(-static_cast<std::int64_t>(k)) * units, 1);
        }
    }
}

TEST(Theorem, WorkedVerdicts) {
    auto v = ergodicity_theorem(two_map(), {Center::X1, -2});
    EXPECT_EQ(v.verdict, Verdict::Ergodic);
    EXPECT_EQ(v.reason, VerdictReason::RadiusRule);
    EXPECT_EQ(ergodicity_theorem(two_map(), {Center::X1, -3}).verdict, Verdict::NotErgodic);
    auto p3 = map(3, q(-2), q(1));
    for (const SphereSpec& s : largest_invariant_spheres(p3, 3)) {
        auto w = ergodicity_theorem(p3, s);
        EXPECT_EQ(w.verdict, Verdict::NotErgodic);
        EXPECT_EQ(w.reason, VerdictReason::PGe3Rule);
    }
    EXPECT_THROW(ergodicity_theorem(two_map(), {Center::X1, -1}), NotApplicable);
}

TEST(Theorem, ErgodicIffTwoRhoEqualsR) {
    for (auto [a, c] : {std::pair{q(2), q(1)}, std::pair{q(8), q(2)}, std::pair{q(4), q(6)}, std::pair{q(32), q(4)}}) {
        auto m = map(2, a, c);
        for (const SphereSpec& s : largest_invariant_spheres(m, 4)) {
            if (s.center != Center::X1 || s.radius_exp == -m.vc()) continue;
            bool two_rho = rho(m, s) == s.radius_exp - 1;
            EXPECT_EQ(ergodicity_theorem(m, s).verdict == Verdict::Ergodic, two_rho);
        }
    }
}

TEST(Rescale, WorkedCoefficients) {
    auto r = rescale_to_unit(two_map(), -2);
    EXPECT_EQ(r.numerator, (Polynomial{q(0), q(1)}));
    EXPECT_EQ(r.denominator, (Polynomial{q(1), q(2), q(8)}));
    EXPECT_GE(valuation(r.denominator.coefficient(2), Prime(2)), Valuation(2));
    EXPECT_GE(valuation(r.denominator.coefficient(1), Prime(2)), Valuation(1));
    EXPECT_THROW(rescale_to_unit(two_map(), -1), NotApplicable);
    EXPECT_THROW(rescale_to_unit(map(3, q(-2), q(1)), -1), NotApplicable);
}

TEST(Rescale, CompositionOracle) {
    auto m = two_map();
    for (std::int64_t l = -2; l >= -5; --l) {
        auto r = rescale_to_unit(m, l);
        Rational g = prime_power(Prime(2), -l);  // g(t) = 2^-l t, radius 2^l
        for (long t = 1; t < 64; t += 2) {
            Rational tt = q(t, 2 * t + 3);
            EXPECT_EQ(r(tt), eval_f(m, g * tt) / g);
        }
    }
}

TEST(Mod4, NumeratorSumsAreConstant) {
    for (std::int64_t l = -2; l >= -6; --l) {
        auto v = mod4_criterion(rescale_to_unit(two_map(), l).numerator, rescale_to_unit(two_map(), l).denominator);
        EXPECT_EQ(v.sums.A1, 1);
        EXPECT_EQ(v.sums.A2, 0);
    }
}

TEST(Mod4, IdentityMapIsNotErgodic) {
    auto v = mod4_criterion(Polynomial{q(0), q(1)}, Polynomial{q(1)});
    EXPECT_FALSE(v.ergodic);
    EXPECT_EQ(v.sums.a1, 1);
    EXPECT_EQ(v.sums.a2, 0);
    EXPECT_EQ(v.sums.b1, 0);
    EXPECT_EQ(v.sums.b2, 1);
}

TEST(Mod4, RescaledWorkedMaps) {
    auto ok = mod4_criterion(rescale_to_unit(two_map(), -2).numerator, rescale_to_unit(two_map(), -2).denominator);
    EXPECT_TRUE(ok.ergodic);
    EXPECT_EQ(ok.case_index, 3);
    auto no = mod4_criterion(rescale_to_unit(two_map(), -3).numerator, rescale_to_unit(two_map(), -3).denominator);
    EXPECT_FALSE(no.ergodic);
}

TEST(Mod4, SwappedCase) {
    // (1 + 2t) / t: sums (2, 1, 1, 0) match nothing, swapped they are (1, 0, 2, 1).
    auto v = mod4_criterion(Polynomial{q(1), q(2)}, Polynomial{q(0), q(1)});
    EXPECT_TRUE(v.ergodic);
    EXPECT_EQ(v.case_index, 5);
    EXPECT_EQ(v.swapped_pattern, 3);
}

TEST(Mod4, Errors) {
    EXPECT_THROW(mod4_criterion(Polynomial{q(1, 2), q(1)}, Polynomial{q(1)}), InvalidInput);
    EXPECT_THROW(mod4_criterion(Polynomial{q(0), q(2)}, Polynomial{q(1)}), InvalidInput);  // 2t leaves the units
}

TEST(Oracle, ErgodicSphereIsOneCycle) {
    auto r = residue_cycle_oracle(two_map(), {Center::X1, -2}, 8);
    ASSERT_EQ(r.levels.size(), 8u);
    for (const auto& l : r.levels) {
        EXPECT_EQ(l.cycle_count, 1u);
        EXPECT_EQ(l.cycle_lengths.front(), std::size_t{1} << (l.level - 1));
    }
    EXPECT_TRUE(r.ergodic());
}

TEST(Oracle, NonErgodicSpheres) {
    EXPECT_FALSE(residue_cycle_oracle(two_map(), {Center::X1, -3}, 8).ergodic());
    auto p3 = map(3, q(-2), q(1));
    for (const SphereSpec& s : largest_invariant_spheres(p3, 2)) EXPECT_FALSE(residue_cycle_oracle(p3, s, 5).ergodic());
}

TEST(Oracle, CsvAndErrors) {
    auto r = residue_cycle_oracle(two_map(), {Center::X1, -3}, 3);
    EXPECT_EQ(oracle_csv(r), "level,ball_count,cycle_count,cycle_lengths\n1,1,1,1\n2,2,2,1;1\n3,4,2,2;2\n");
    EXPECT_THROW(residue_cycle_oracle(two_map(), {Center::X1, -3}, 1), InvalidInput);
    EXPECT_THROW(residue_cycle_oracle(two_map(), {Center::X1, -1}, 3), NotApplicable);
}

TEST(CrossCheck, AgreementAcrossRadii) {
    for (std::int64_t e = -2; e >= -6; --e) {
        auto r = require_agreement(two_map(), {Center::X1, e}, 8);
        EXPECT_TRUE(r.agree());
        EXPECT_EQ(r.verdict.verdict == Verdict::Ergodic, e == -2);
        ASSERT_TRUE(r.mod4);
        EXPECT_EQ(*r.verdict.oracle_agreement, true);
    }
    auto case3 = map(5, q(3), q(1));
    for (const SphereSpec& s : largest_invariant_spheres(case3, 2)) EXPECT_TRUE(require_agreement(case3, s, 4).agree());
}

TEST(CrossCheck, TwoAdicXTwoSpheres) {
    // Case 3 needs v(a - c^2) = 2 v(c), impossible at p = 2; case 2 has invariant x2 spheres.
    auto m = map(2, q(1), q(2));
    ASSERT_EQ(classify(m).case_id, 2);
    for (std::int64_t e = -1; e >= -4; --e) {
        auto r = require_agreement(m, {Center::X2, e}, 8);
        EXPECT_EQ(r.verdict.verdict, Verdict::NotErgodic);
    }
}
