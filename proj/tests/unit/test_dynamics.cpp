#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/dynamics/classify.hpp"
#include "padyn/dynamics/evaluate.hpp"
#include "padyn/dynamics/norm_profile.hpp"
#include "padyn/dynamics/orbit.hpp"
#include "padyn/padic/squares.hpp"

using namespace padyn;

namespace {

Rational q(long n, long d = 1) {
    Rational out(n, d);
    out.canonicalize();
    return out;
}

CanonicalMap map(long p, Rational a, Rational c) { return CanonicalMap(Prime(p), a, c); }

/// Pole norms from Hensel roots of x^2 + cx + a, min and max valuation order reversed.
std::pair<std::int64_t, std::int64_t> hensel_pole_valuations(long p, const Rational& a, const Rational& c) {
    Prime pr(p);
    TruncatedPadic s = hensel_sqrt(c * c - 4 * a, pr, 40);
    auto tc = TruncatedPadic::from_rational(c, pr, 80);
    auto two = TruncatedPadic::from_rational(q(2), pr, 80);
    std::int64_t v1 = ((-tc + s) / two).valuation();
    std::int64_t v2 = ((-tc - s) / two).valuation();
    return {std::max(v1, v2), std::min(v1, v2)};  // (v_alpha, v_beta)
}

}  // namespace

TEST(EvalF, FixedPointsAndWorkedValue) {
    auto m = map(7, q(4), q(3));
    EXPECT_EQ(eval_f(m, q(0)), q(0));
    EXPECT_EQ(eval_f(m, m.x2()), m.x2());
    EXPECT_EQ(eval_f(m, q(-2)), q(-4));
    // 4(-2) / (4 - 6 + 4) by hand
    EXPECT_EQ(q(4 * -2, 4 - 6 + 4), q(-4));
}

TEST(EvalF, PoleHit) {
    auto m = map(3, q(-2), q(1));  // poles 1 and -2
    EXPECT_THROW(eval_f(m, q(1)), PoleHit);
    EXPECT_THROW(eval_f(m, q(-2)), PoleHit);
    auto o = orbit(m, q(1), 5);
    ASSERT_TRUE(o.pole_hit);
    EXPECT_EQ(o.pole_hit->step, 0u);
    EXPECT_EQ(o.pole_hit->point, "1");
}

TEST(CanonicalMap, RejectsZeroParameters) {
    EXPECT_THROW(map(7, q(0), q(1)), InvalidInput);
    EXPECT_THROW(map(7, q(1), q(0)), InvalidInput);
}

TEST(AlphaBeta, WorkedMapsAgainstHenselPoles) {
    struct Case {
        long p;
        Rational c, a;
        std::int64_t va, vb;
    };
    for (const auto& k : {Case{3, q(1), q(3), 1, 0}, Case{5, q(5), q(-1), 0, 0}, Case{2, q(1), q(2), 1, 0}}) {
        auto ab = alpha_beta(map(k.p, k.a, k.c));
        EXPECT_EQ(ab.v_alpha, k.va);
        EXPECT_EQ(ab.v_beta, k.vb);
        auto [va, vb] = hensel_pole_valuations(k.p, k.a, k.c);
        EXPECT_EQ(va, ab.v_alpha);
        EXPECT_EQ(vb, ab.v_beta);
    }
}

TEST(AlphaBeta, RandomParametersAgainstHenselPoles) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> num(-400, 400), den(1, 60), pick(0, 3);
    const long primes[] = {2, 3, 5, 7};
    int checked = 0;
    while (checked < 200) {
        long p = primes[pick(rng)];
        Rational a = q(num(rng), den(rng)), c = q(num(rng), den(rng));
        if (a == 0 || c == 0) continue;
        Rational disc = c * c - 4 * a;
        if (disc == 0 || !oracle::is_square(disc, p)) continue;
        auto m = map(p, a, c);
        auto [va, vb] = hensel_pole_valuations(p, a, c);
        ASSERT_EQ(m.alpha_beta().v_alpha, va) << "p=" << p << " a=" << a << " c=" << c;
        ASSERT_EQ(m.alpha_beta().v_beta, vb) << "p=" << p << " a=" << a << " c=" << c;
        ++checked;
    }
}

TEST(AlphaBeta, OddValuationOnEqualBranch) {
    auto m = map(3, q(3), q(3));
    EXPECT_FALSE(m.has_alpha_beta());
    EXPECT_THROW(m.alpha_beta(), InconsistentParameters);
    EXPECT_THROW(classify(m), InconsistentParameters);
}

TEST(AlphaBeta, NormIdentities) {
    for (auto [p, a, c] : {std::tuple{5L, q(-1), q(5)}, std::tuple{5L, q(3), q(1)}, std::tuple{3L, q(-2), q(1)},
                           std::tuple{3L, q(3), q(1)}, std::tuple{2L, q(2), q(1)}}) {
        auto m = map(p, a, c);
        auto ab = m.alpha_beta();
        EXPECT_EQ(m.va(), ab.v_alpha + ab.v_beta);
        if (ab.equal()) {
            EXPECT_GE(m.vc(), ab.v_alpha);
        } else {
            EXPECT_EQ(m.vc(), ab.v_beta);
        }
    }
}

TEST(Poles, VietaIdentities) {
    auto exact = poles(map(3, q(-2), q(1)));
    ASSERT_EQ(exact.form, PoleForm::Rational);
    EXPECT_EQ(exact.exact->first + exact.exact->second, q(-1));
    EXPECT_EQ(exact.exact->first * exact.exact->second, q(-2));

    auto m = map(5, q(3), q(1));
    auto lifted = poles(m, 20);
    ASSERT_EQ(lifted.form, PoleForm::Truncated);
    auto [x, y] = *lifted.lifted;
    EXPECT_TRUE((x + y).agrees_with(q(-1)));
    EXPECT_TRUE((x * y).agrees_with(q(3)));
    EXPECT_GE(x.precision(), 20);

    auto none = poles(map(3, q(1), q(-1)));  // c^2 - 4a = -3, v odd
    EXPECT_EQ(none.form, PoleForm::Extension);
}

struct Worked {
    long p;
    Rational c, a;
    int case_id;
    std::int64_t x2_multiplier_v;
    FixedPointKind kind;
    RegionKind region;
    std::int64_t region_exp;
};

class Classify : public ::testing::TestWithParam<Worked> {};

TEST_P(Classify, MatchesCaseRules) {
    const Worked& w = GetParam();
    auto m = map(w.p, w.a, w.c);
    auto cls = classify(m);
    EXPECT_EQ(cls.case_id, w.case_id);
    EXPECT_EQ(cls.x1.kind, FixedPointKind::Indifferent);
    EXPECT_EQ(cls.x1.region.kind, RegionKind::SiegelDisk);
    EXPECT_EQ(cls.x1.region.radius_exp, -cls.alpha_beta.v_alpha);
    EXPECT_EQ(cls.x2.point, -w.c);
    EXPECT_EQ(cls.x2.multiplier_valuation, Valuation(w.x2_multiplier_v));
    EXPECT_EQ(cls.x2.kind, w.kind);
    EXPECT_EQ(cls.x2.region.kind, w.region);
    EXPECT_EQ(cls.x2.region.radius_exp, w.region_exp);
    EXPECT_EQ(cls.shared_siegel_disk, w.case_id == 2);

    // Independent multiplier: f'(x) = a(a - x^2)/D(x)^2 and the trial-division valuation.
    Rational x2 = -w.c;
    Rational d = x2 * x2 + w.c * x2 + w.a;
    Rational lambda = w.a * (w.a - x2 * x2) / (d * d);
    EXPECT_EQ(lambda, cls.x2.multiplier);
    EXPECT_EQ(oracle::valuation(lambda, w.p), w.x2_multiplier_v);
}

INSTANTIATE_TEST_SUITE_P(
    WorkedMaps, Classify,
    ::testing::Values(Worked{5, q(5), q(-1), 2, 0, FixedPointKind::Indifferent, RegionKind::SiegelDisk, 0},
                      Worked{5, q(1), q(3), 3, 0, FixedPointKind::Indifferent, RegionKind::SiegelDisk, 0},
                      Worked{3, q(1), q(-2), 4, 1, FixedPointKind::Attracting, RegionKind::Basin, 0},
                      Worked{3, q(1), q(3), 5, -1, FixedPointKind::Repelling, RegionKind::RepellingBall, 0}));

TEST(Classify, SuperattractingIsCaseFour) {
    auto cls = classify(map(5, q(4), q(2)));  // a = c^2
    EXPECT_EQ(cls.case_id, 4);
    EXPECT_TRUE(cls.x2.superattracting);
    EXPECT_TRUE(cls.x2.multiplier_valuation.is_infinite());
    EXPECT_EQ(cls.x2.kind, FixedPointKind::Attracting);
}

TEST(Classify, WorkedNorms) {
    // (p=5, c=5, a=-1): |c| = 1/5 < 1 = alpha = beta, |1 - c^2/a| = |26| = 1
    EXPECT_EQ(oracle::valuation(q(26), 5), 0);
    // (p=5, c=1, a=3): |a - c^2| = |2| = 1 = alpha^2, -11 = 4 mod 5 is a square
    EXPECT_EQ(oracle::valuation(q(2), 5), 0);
    EXPECT_TRUE(oracle::is_square(q(-11), 5));
    // (p=3, c=1, a=-2): 1 - 1/(-2) = 3/2
    EXPECT_EQ(multiplier_at_x2(map(3, q(-2), q(1))), q(3, 2));
}

TEST(InvariantSpheres, WorkedRanges) {
    auto r = invariant_spheres(map(2, q(2), q(1)));
    EXPECT_EQ(r[0].max_radius_exp, -2);  // r in {1/4, 1/8, ...}
    EXPECT_FALSE(r[1].max_radius_exp);
    EXPECT_FALSE(invariant_spheres(map(3, q(-2), q(1)))[1].max_radius_exp);
    EXPECT_FALSE(invariant_spheres(map(3, q(3), q(1)))[1].max_radius_exp);
    EXPECT_EQ(invariant_spheres(map(5, q(3), q(1)))[1].max_radius_exp, -1);
    EXPECT_EQ(invariant_spheres(map(5, q(-1), q(5)))[1].max_radius_exp, -1);
}

TEST(InvariantSpheres, EmpiricalOrbitCheck) {
    // Spheres below alpha keep every sampled point; the sphere at alpha loses one.
    auto m = map(2, q(2), q(1));
    for (std::int64_t e = -5; e <= -2; ++e) {
        for (const Rational& x : sample_sphere(m, {Center::X1, e})) {
            EXPECT_EQ(valuation(eval_f(m, x), m.prime()), Valuation(-e)) << x;
        }
    }
    bool escaped = false;
    for (const Rational& x : sample_sphere(m, {Center::X1, -1})) {
        try {
            escaped = escaped || valuation(eval_f(m, x), m.prime()) != Valuation(1);
        } catch (const PoleHit&) {
            escaped = true;
        }
    }
    EXPECT_TRUE(escaped);
}

TEST(Orbit, SiegelConfinementExact) {
    auto m = map(5, q(3), q(1));
    for (const Rational& x : sample_sphere(m, {Center::X1, -1}, {4, std::nullopt})) {
        auto o = orbit(m, x, 8);
        EXPECT_TRUE(confined_to(o, {Center::X1, -1}));
        EXPECT_EQ(o.iterations(), 8u);
    }
}

TEST(Orbit, SiegelConfinementTruncated) {
    auto m = map(2, q(2), q(1));
    SphereSpec s{Center::X1, -3};
    for (const Rational& x : sample_sphere(m, s, {6, std::nullopt})) {
        auto o = orbit_truncated(m, x, 200, 40);
        EXPECT_TRUE(confined_to(o, s));
        EXPECT_EQ(o.points.back().precision(), o.points.front().precision());
    }
}

TEST(Orbit, TruncatedMatchesExactPrefix) {
    auto m = map(3, q(-2), q(1));
    auto exact = orbit(m, q(5, 7), 6);
    auto approx = orbit_truncated(m, q(5, 7), 6, 30);
    ASSERT_EQ(exact.points.size(), approx.points.size());
    for (std::size_t k = 0; k < exact.points.size(); ++k) EXPECT_TRUE(approx.points[k].agrees_with(exact.points[k]));
}

TEST(Orbit, CaseFourConvergesToX2) {
    auto m = map(3, q(-2), q(1));
    auto o = orbit(m, q(2), 6);  // x0 = -1 + 3
    for (std::size_t k = 1; k < o.steps.size(); ++k) {
        EXPECT_GE(o.steps[k].to_x2.v, o.steps[k - 1].to_x2.v + Valuation(1));
    }
}

TEST(Orbit, CaseFourContractionSampled) {
    auto m = map(3, q(-2), q(1));
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> num(-300, 300), den(1, 300);
    int started = 0;
    while (started < 100) {
        Rational t = q(num(rng), den(rng));
        if (t == 0 || oracle::valuation(t, 3) < 0) continue;
        Rational x0 = m.x2() + 3 * t;  // U_alpha(x2) with alpha = 1
        std::int64_t gap = valuation(x0 - m.x2(), m.prime()).value();
        auto o = orbit_truncated(m, x0, static_cast<std::size_t>(20 * gap), 60);
        ASSERT_FALSE(o.pole_hit);
        for (std::size_t k = 1; k < o.steps.size(); ++k) EXPECT_GE(o.steps[k].to_x2.v, o.steps[k - 1].to_x2.v);
        EXPECT_GT(o.steps.back().to_x2.v, Valuation(20));
        ++started;
    }
}

TEST(Orbit, CaseFiveRepelsAtFirstStep) {
    auto m = map(3, q(3), q(1));
    for (Rational x0 : {q(2), q(-4), q(8), q(1, 2)}) {
        auto o = orbit(m, x0, 1);
        EXPECT_LT(o.steps[1].to_x2.v, o.steps[0].to_x2.v) << x0;
    }
}

TEST(Orbit, HeightGuard) {
    auto m = map(5, q(3), q(1));
    EXPECT_THROW(orbit(m, q(5, 7), 40, OrbitOptions{4096}), Unsupported);
    EXPECT_THROW(orbit(m, q(5), 0), InvalidInput);
}

TEST(NormProfile, Branches) {
    auto m = map(3, q(9), q(1));  // v(a) = 2, v(c) = 0: alpha = 1/9, beta = 1
    auto below = norm_image_profile(m, -3);
    EXPECT_EQ(below.regime, ProfileRegime::BelowAlpha);
    EXPECT_EQ(below.image_exp, -3);
    auto mid = norm_image_profile(m, -1);
    EXPECT_EQ(mid.regime, ProfileRegime::BetweenAlphaBeta);
    EXPECT_EQ(mid.bound, BoundKind::AtLeast);
    EXPECT_EQ(mid.image_exp, -2);
    auto above = norm_image_profile(m, 2);
    EXPECT_EQ(above.regime, ProfileRegime::AboveBeta);
    EXPECT_EQ(above.image_exp, -2 - 2);
    for (std::int64_t e = -4; e <= 3; ++e) EXPECT_TRUE(validate_norm_profile(m, e).holds()) << e;
}

TEST(NormProfile, SeededSamplingIsReproducible) {
    auto m = map(2, q(2), q(1));
    SamplingOptions opts{16, 1234};
    EXPECT_EQ(sample_sphere(m, {Center::X1, -3}, opts), sample_sphere(m, {Center::X1, -3}, opts));
    for (const Rational& x : sample_sphere(m, {Center::X1, -3}, opts)) EXPECT_TRUE(on_sphere(m, {Center::X1, -3}, x));
}
