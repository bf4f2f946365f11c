#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "padyn/padyn.hpp"

namespace padyn::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

struct Sampling {
    std::size_t samples = 32;
    std::optional<std::uint64_t> seed;

    SamplingOptions options() const { return {samples, seed}; }
};

inline Json q(const Rational& x) { return x.get_str(); }

inline Json valuation_json(const Valuation& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

inline Json sphere_json(const SphereSpec& s) { return {{"center", to_string(s.center)}, {"radius_exp", s.radius_exp}}; }

inline Json polynomial_json(const Polynomial& f) {
    Json out = Json::array();
    for (const auto& c : f.coefficients()) out.push_back(q(c));
    return out;
}

inline Json header(const std::string& command) { return {{"tool", "padyn"}, {"version", kVersion}, {"command", command}}; }

inline Json poles_json(const CanonicalMap& m) {
    Poles pl = poles(m);
    Json out{{"form", to_string(pl.form)}, {"in_qp", pl.form != PoleForm::Extension}};
    if (pl.exact) {
        out["values"] = {q(pl.exact->first), q(pl.exact->second)};
    } else if (pl.lifted) {
        out["values"] = {pl.lifted->first.to_string(), pl.lifted->second.to_string()};
    } else {
        out["values"] = nullptr;
    }
    return out;
}

inline Json map_json(const CanonicalMap& m) {
    Json out{{"a", q(m.a())},
             {"c", q(m.c())},
             {"x1", q(m.x1())},
             {"x2", q(m.x2())},
             {"v_a", m.va()},
             {"v_c", m.vc()},
             {"discriminant", q(m.discriminant())},
             {"discriminant_square", m.discriminant_is_square()}};
    const AlphaBeta ab = m.alpha_beta();
    out["alpha"] = {{"v", ab.v_alpha}, {"radius_exp", -ab.v_alpha}};
    out["beta"] = {{"v", ab.v_beta}, {"radius_exp", -ab.v_beta}};
    out["poles"] = poles_json(m);
    return out;
}

inline Json fixed_point_json(const FixedPointReport& f) {
    return {{"name", to_string(f.which)},
            {"point", q(f.point)},
            {"multiplier", q(f.multiplier)},
            {"multiplier_v", valuation_json(f.multiplier_valuation)},
            {"kind", to_string(f.kind)},
            {"superattracting", f.superattracting},
            {"case", f.case_id},
            {"region",
             {{"kind", to_string(f.region.kind)},
              {"center", to_string(f.region.center)},
              {"radius_exp", f.region.radius_exp},
              {"open", true}}}};
}

inline Json classification_json(const Classification& c) {
    return {{"case", c.case_id},
            {"shared_siegel_disk", c.shared_siegel_disk},
            {"fixed_points", {fixed_point_json(c.x1), fixed_point_json(c.x2)}}};
}

inline Json invariant_spheres_json(const CanonicalMap& m) {
    Json out = Json::array();
    for (const auto& r : invariant_spheres(m)) {
        Json max = r.max_radius_exp ? Json(*r.max_radius_exp) : Json(nullptr);
        out.push_back({{"center", to_string(r.center)}, {"max_radius_exp", max}});
    }
    return out;
}

inline Json verdict_json(const ErgodicityVerdict& v) {
    Json out{{"sphere", sphere_json(v.sphere)}, {"verdict", to_string(v.verdict)}, {"reason", to_string(v.reason)}};
    out["mod4_case"] = v.mod4_case ? Json(*v.mod4_case) : Json(nullptr);
    out["oracle_agreement"] = v.oracle_agreement ? Json(*v.oracle_agreement) : Json(nullptr);
    return out;
}

inline Json oracle_json(const OracleResult& r) {
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        levels.push_back({{"level", l.level},
                          {"ball_count", l.ball_count},
                          {"cycle_count", l.cycle_count},
                          {"cycle_lengths", l.cycle_lengths}});
    }
    return {{"depth", r.levels.size()}, {"ergodic", r.ergodic()}, {"levels", levels}};
}

inline Json checks_json(const CanonicalMap& m, const Sampling& sampling, std::int64_t spheres_per_center) {
    Json out = Json::array();
    for (const SphereSpec& s : largest_invariant_spheres(m, spheres_per_center)) {
        IsometryRecord iso = isometry_check(m, s, sampling.options());
        auto table = displacement_table(m, s, sampling.options());
        Json entry{{"sphere", sphere_json(s)}, {"isometry_pairs", iso.pairs.size()}, {"isometry_holds", true}};
        try {
            std::int64_t predicted = rho(m, s);
            bool holds = true;
            for (const auto& d : table) holds = holds && d.v == Valuation(-predicted);
            entry["rho_exp"] = predicted;
            entry["rho_holds"] = holds;
        } catch (const NotApplicable&) {
            Json observed = Json::array();
            for (const auto& d : table) observed.push_back(valuation_json(d.v));
            entry["rho_exp"] = nullptr;
            entry["displacement_v"] = observed;
        }
        entry["rho_samples"] = table.size();
        out.push_back(entry);
    }
    return out;
}

inline Json two_periodic_json(const CanonicalMap& m, std::int64_t precision);

inline Json analysis_json(const CanonicalMap& m, const Sampling& sampling) {
    Classification cls = classify(m);
    Json out{{"map", map_json(m)},
             {"classification", classification_json(cls)},
             {"invariant_spheres", invariant_spheres_json(m)}};
    Json verdicts = Json::array();
    for (const SphereSpec& s : largest_invariant_spheres(m, 3)) verdicts.push_back(verdict_json(ergodicity_theorem(m, s)));
    out["ergodicity"] = verdicts;
    out["checks"] = checks_json(m, sampling, 2);
    out["two_periodic"] = two_periodic_json(m, 32);
    return out;
}

/// The orbit lies on an invariant sphere about a fixed point, if any.
template <class Num>
std::optional<SphereSpec> orbit_sphere(const CanonicalMap& m, const std::vector<Num>& pts) {
    for (Center c : {Center::X1, Center::X2}) {
        std::optional<Valuation> common;
        bool same = true;
        for (const auto& y : pts) {
            Valuation v = detail::valuation_floor(y - detail::like(center_point(m, c), y), m.prime());
            if (v.is_infinite()) same = false;
            if (common && *common != v) same = false;
            common = v;
        }
        if (!same || !common) continue;
        SphereSpec s{c, -common->value()};
        if (is_invariant(m, s)) return s;
    }
    return std::nullopt;
}

inline Json periodic_orbit_json(const CanonicalMap& m, const PeriodicOrbit& o) {
    Json pts = Json::array();
    std::optional<SphereSpec> sphere;
    if (o.exact()) {
        for (const auto& y : o.exact_points()) pts.push_back(q(y));
        sphere = orbit_sphere(m, o.exact_points());
    } else {
        for (const auto& y : o.truncated_points()) pts.push_back(y.to_string());
        sphere = orbit_sphere(m, o.truncated_points());
    }
    Json out{{"period", o.period}, {"exact", o.exact()}, {"points", pts}};
    out["multiplier"] = o.multiplier ? q(*o.multiplier) : Json(nullptr);
    out["multiplier_v"] = valuation_json(o.multiplier_valuation);
    out["containment_radius_exp"] = o.containment_exp ? Json(*o.containment_exp) : Json(nullptr);
    if (sphere) {
        out["invariant_sphere"] = sphere_json(*sphere);
        try {
            OrbitStructureReport rep = verify_orbit_structure(m, o, *sphere);
            out["structure"] = {{"rho_exp", rep.rho_exp},
                                {"contained_in_rho_ball", true},
                                {"indifferent", true},
                                {"ball_checks", rep.ball_checks}};
        } catch (const NotApplicable& e) {
            out["structure"] = {{"not_applicable", e.what()}};
        }
    } else {
        out["invariant_sphere"] = nullptr;
        out["structure"] = nullptr;
    }
    return out;
}

inline Json two_periodic_json(const CanonicalMap& m, std::int64_t precision) {
    TwoPeriodicResult r = two_periodic(m, precision);
    Json out{{"discriminant", q(r.discriminant)}, {"unique_factor", two_cycle_factor_is_unique(m)}};
    out["orbit"] = r.orbit ? periodic_orbit_json(m, *r.orbit) : Json(nullptr);
    out["none_reason"] = r.none_reason ? Json(to_string(*r.none_reason)) : Json(nullptr);
    return out;
}

inline Json three_periodic_json(const Prime& p, const Rational& qv) {
    ThreePeriodicResult r = three_periodic_from_q(p, qv);
    Json spheres = Json::array();
    for (Center c : {Center::X1, Center::X2}) {
        SphereSpec s = family_sphere(r.family, p, c);
        spheres.push_back({{"sphere", sphere_json(s)}, {"invariant", is_invariant(r.map, s)}});
    }
    return {{"family",
             {{"q", q(r.family.q)},
              {"h", q(r.family.h)},
              {"a", q(r.family.a)},
              {"c", q(r.family.c)},
              {"defining_identity", r.family.defining_identity_holds()},
              {"cubic_relation", r.family.cubic_relation_holds()}}},
            {"map", map_json(r.map)},
            {"classification", classification_json(classify(r.map))},
            {"p6", polynomial_json(p6_polynomial(r.map))},
            {"p6_at_a", q(r.p6_at_a)},
            {"family_spheres", spheres},
            {"orbit", periodic_orbit_json(r.map, r.orbit)}};
}

inline Json reading_json(const NormReading& r) { return {{"v", valuation_json(r.v)}, {"exact", r.exact}}; }

template <class Num>
Json orbit_json(const CanonicalMap& m, const Orbit<Num>& o) {
    Json steps = Json::array();
    for (std::size_t k = 0; k < o.points.size(); ++k) {
        Json point;
        if constexpr (std::is_same_v<Num, Rational>) {
            point = q(o.points[k]);
        } else {
            point = o.points[k].to_string();
        }
        steps.push_back({{"k", k}, {"point", point}, {"to_x1", reading_json(o.steps[k].to_x1)}, {"to_x2", reading_json(o.steps[k].to_x2)}});
    }
    Json out{{"iterations", o.iterations()}, {"steps", steps}};
    out["pole_hit"] = o.pole_hit ? Json{{"step", o.pole_hit->step}, {"point", o.pole_hit->point}} : Json(nullptr);
    Json confined = Json::array();
    for (Center c : {Center::X1, Center::X2}) {
        const NormReading& first = reading_for(o.steps.front(), c);
        if (!first.exact || first.v.is_infinite()) continue;
        SphereSpec s{c, -first.v.value()};
        if (!is_invariant(m, s)) continue;
        confined.push_back({{"sphere", sphere_json(s)}, {"confined", confined_to(o, s)}});
    }
    out["invariant_sphere_confinement"] = confined;
    return out;
}

inline Json conjugation_json(const GeneralMap& g, const ConjugationResult& r, const Sampling& sampling) {
    Json out{{"cubic", polynomial_json(fixed_point_cubic(g))},
             {"pattern", to_string(fixed_point_pattern(g))},
             {"x1", q(r.x1)},
             {"x2", q(r.x2)},
             {"B", q(r.B)},
             {"D", q(r.D)},
             {"shift", "t + x2"}};
    out["canonical"] = r.canonical ? analysis_json(*r.canonical, sampling) : Json(nullptr);
    return out;
}

/// Indented "key: value" rendering of a report for terminals.
inline void render_text(const Json& j, std::string& out, int depth = 0) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_structured() && !value.empty()) {
                out += pad + key + ":\n";
                render_text(value, out, depth + 1);
            } else {
                out += pad + key + ": " + scalar(value) + "\n";
            }
        }
    } else if (j.is_array()) {
        bool flat = true;
        for (const auto& v : j) flat = flat && !v.is_structured();
        if (flat) {
            std::string line;
            for (const auto& v : j) line += (line.empty() ? "" : ", ") + scalar(v);
            out += pad + "[" + line + "]\n";
            return;
        }
        for (const auto& v : j) {
            out += pad + "-\n";
            render_text(v, out, depth + 1);
        }
    } else {
        out += pad + scalar(j) + "\n";
    }
}

}  // namespace padyn::report
