#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/padic/rational.hpp"

namespace padyn {

enum class Center { X1, X2 };

inline const char* to_string(Center c) { return c == Center::X1 ? "x1" : "x2"; }

/// S_r(center) with r = p^radius_exp.
struct SphereSpec {
    Center center = Center::X1;
    std::int64_t radius_exp = 0;

    friend bool operator==(const SphereSpec&, const SphereSpec&) = default;
};

inline Rational center_point(const CanonicalMap& m, Center c) { return c == Center::X1 ? m.x1() : m.x2(); }

/// |x - center|_p = p^radius_exp.
inline bool on_sphere(const CanonicalMap& m, const SphereSpec& s, const Rational& x) {
    Valuation v = valuation(x - center_point(m, s.center), m.prime());
    return v.is_finite() && v.value() == -s.radius_exp;
}

struct SamplingOptions {
    std::size_t count = 32;
    /// Random units instead of the height-ordered enumeration when set.
    std::optional<std::uint64_t> seed;
};

/// Units of Z_p in increasing height max(|n|, m), then by m, then by n.
/// With a seed: uniformly random numerators and denominators below 2^20.
inline std::vector<Rational> sample_units(const Prime& p, const SamplingOptions& opts = {}) {
    std::vector<Rational> out;
    out.reserve(opts.count);
    auto coprime_to_p = [&](long n) { return n % p.value() != 0; };
    if (opts.seed) {
        std::mt19937_64 rng(*opts.seed);
        std::uniform_int_distribution<long> dist(1, 1L << 20);
        while (out.size() < opts.count) {
            long n = dist(rng), d = dist(rng);
            if (!coprime_to_p(n) || !coprime_to_p(d)) continue;
            if (rng() & 1U) n = -n;
            out.emplace_back(n, d);
            out.back().canonicalize();
        }
        return out;
    }
    for (long h = 1; out.size() < opts.count; ++h) {
        for (long d = 1; d <= h && out.size() < opts.count; ++d) {
            for (long n = -h; n <= h && out.size() < opts.count; ++n) {
                if (n == 0 || std::max(std::labs(n), d) != h || std::gcd(n, d) != 1) continue;
                if (!coprime_to_p(n) || !coprime_to_p(d)) continue;
                out.emplace_back(n, d);
            }
        }
    }
    return out;
}

/// Points center + p^(-radius_exp) * u for sampled units u; all lie on the sphere.
inline std::vector<Rational> sample_sphere(const CanonicalMap& m, const SphereSpec& s,
                                           const SamplingOptions& opts = {}) {
    Rational center = center_point(m, s.center);
    Rational scale = prime_power(m.prime(), -s.radius_exp);
    std::vector<Rational> out;
    for (const Rational& u : sample_units(m.prime(), opts)) out.emplace_back(center + scale * u);
    return out;
}

}  // namespace padyn
