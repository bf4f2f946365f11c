#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "report.hpp"

namespace {

using padyn::Rational;
using padyn::report::Json;

enum Exit { kOk = 0, kInvalid = 1, kUnsupported = 2, kInternal = 3 };

struct Globals {
    bool json = false;
    bool timestamp = false;
    std::size_t samples = 32;
    std::optional<std::uint64_t> seed;

    padyn::report::Sampling sampling() const { return {samples, seed}; }
};

Rational literal(const std::string& flag, const std::string& text) {
    try {
        return padyn::parse_rational(text);
    } catch (const padyn::ParseError& e) {
        throw padyn::ParseError("--" + flag + ": line 1, column " + std::to_string(e.column()) + ": " + e.what(),
                                e.column());
    }
}

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void emit(const Globals& g, const std::string& command, Json input, Json body) {
    Json doc = padyn::report::header(command);
    if (g.timestamp) doc["timestamp"] = utc_now();
    doc["input"] = std::move(input);
    for (auto& [k, v] : body.items()) doc[k] = v;
    if (g.json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::string text;
        padyn::report::render_text(doc, text);
        std::cout << text;
    }
}

struct MapArgs {
    long p = 0;
    std::string a, c;
};

padyn::CanonicalMap make_map(const MapArgs& args) {
    return padyn::CanonicalMap(padyn::Prime(args.p), literal("a", args.a), literal("c", args.c));
}

Json map_input(const MapArgs& args) {
    return {{"p", args.p}, {"a", literal("a", args.a).get_str()}, {"c", literal("c", args.c).get_str()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic dynamics of f(x) = ax/(x^2+cx+a)"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "emit JSON");
    app.add_flag("--timestamp", g.timestamp, "include a UTC timestamp (breaks byte-identical output)");
    app.add_option("--samples", g.samples, "sample points per sphere")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for random sampling; default is deterministic small-height units");
    app.fallthrough();

    MapArgs map;
    std::string b, d;
    auto add_map = [&](CLI::App* sub, bool with_ac) {
        sub->add_option("--p", map.p, "prime")->required();
        if (with_ac) {
            sub->add_option("--a", map.a, "rational a")->required();
            sub->add_option("--c", map.c, "rational c")->required();
        }
    };

    auto* analyze = app.add_subcommand("analyze", "classify fixed points, invariant spheres, ergodicity");
    add_map(analyze, true);
    analyze->add_option("--b", b, "rational b (four-parameter form)");
    analyze->add_option("--d", d, "rational d (four-parameter form)");

    auto* orbit_cmd = app.add_subcommand("orbit", "iterate f from x0");
    add_map(orbit_cmd, true);
    std::string x0;
    std::size_t steps = 10;
    std::optional<std::int64_t> orbit_precision;
    orbit_cmd->add_option("--x0", x0, "starting point")->required();
    orbit_cmd->add_option("--steps", steps, "iterations")->check(CLI::PositiveNumber);
    orbit_cmd->add_option("--precision", orbit_precision, "iterate in Q_p to this many digits instead of exactly")
        ->check(CLI::PositiveNumber);

    auto* ergodic = app.add_subcommand("ergodic", "decide ergodicity on an invariant sphere");
    add_map(ergodic, true);
    std::int64_t radius_exp = 0;
    std::string center = "x1";
    std::optional<std::int64_t> depth;
    std::string csv;
    ergodic->add_option("--radius-exp", radius_exp, "sphere radius r = p^radius_exp")->required();
    ergodic->add_option("--center", center, "x1 or x2")->check(CLI::IsMember({"x1", "x2"}));
    ergodic->add_option("--oracle-depth", depth, "residue oracle depth");
    ergodic->add_option("--csv", csv, "write the oracle cycle table as CSV");

    auto* periodic = app.add_subcommand("periodic", "2-cycles of a map, or the 3-cycle family from q");
    add_map(periodic, false);
    periodic->add_option("--a", map.a, "rational a");
    periodic->add_option("--c", map.c, "rational c");
    std::string qtext;
    std::int64_t precision = 32;
    periodic->add_option("--q", qtext, "family parameter for 3-cycles");
    periodic->add_option("--precision", precision, "digits for Hensel-lifted orbits")->check(CLI::PositiveNumber);

    auto* conj = app.add_subcommand("conjugate", "conjugate (ax+b)/(x^2+cx+d) to the canonical form");
    add_map(conj, true);
    conj->add_option("--b", b, "rational b")->required();
    conj->add_option("--d", d, "rational d")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*analyze) {
            if (b.empty() != d.empty()) throw padyn::InvalidInput("--b and --d must be given together");
            if (!b.empty()) {
                padyn::GeneralMap gm(padyn::Prime(map.p), literal("a", map.a), literal("b", b), literal("c", map.c),
                                     literal("d", d));
                auto r = padyn::conjugate(gm);
                if (!r.canonical) {
                    throw padyn::Unsupported("double fixed point x2 = " + r.x2.get_str() +
                                             " != 0; only the x2 = 0 branch reduces to ax/(x^2+cx+a)");
                }
                Json input{{"p", map.p}, {"a", gm.a.get_str()}, {"b", gm.b.get_str()}, {"c", gm.c.get_str()},
                           {"d", gm.d.get_str()}};
                emit(g, "analyze", input, {{"conjugation", padyn::report::conjugation_json(gm, r, g.sampling())}});
            } else {
                auto m = make_map(map);
                emit(g, "analyze", map_input(map), padyn::report::analysis_json(m, g.sampling()));
            }
        } else if (*orbit_cmd) {
            auto m = make_map(map);
            Rational start = literal("x0", x0);
            Json input = map_input(map);
            input["x0"] = start.get_str();
            input["steps"] = steps;
            Json body;
            if (orbit_precision) {
                input["precision"] = *orbit_precision;
                body["mode"] = "truncated";
                body["orbit"] = padyn::report::orbit_json(m, padyn::orbit_truncated(m, start, steps, *orbit_precision));
            } else {
                body["mode"] = "exact";
                body["orbit"] = padyn::report::orbit_json(m, padyn::orbit(m, start, steps));
            }
            emit(g, "orbit", input, body);
        } else if (*ergodic) {
            auto m = make_map(map);
            padyn::SphereSpec s{center == "x1" ? padyn::Center::X1 : padyn::Center::X2, radius_exp};
            std::int64_t lv = depth.value_or(padyn::default_oracle_depth(m.prime()));
            auto r = padyn::require_agreement(m, s, lv);
            Json input = map_input(map);
            input["center"] = center;
            input["radius_exp"] = radius_exp;
            input["oracle_depth"] = lv;
            Json body{{"verdict", padyn::report::verdict_json(r.verdict)}};
            if (r.rescaled) {
                body["rescaled"] = {{"l", r.rescaled->l},
                                    {"numerator", padyn::report::polynomial_json(r.rescaled->numerator)},
                                    {"denominator", padyn::report::polynomial_json(r.rescaled->denominator)}};
                const auto& sums = r.mod4->sums;
                body["mod4"] = {{"ergodic", r.mod4->ergodic},
                                {"case", r.mod4->case_index ? Json(*r.mod4->case_index) : Json(nullptr)},
                                {"sums_mod4", {sums.a1, sums.a2, sums.b1, sums.b2}}};
            }
            try {
                body["rho_exp"] = padyn::rho(m, s);
            } catch (const padyn::NotApplicable&) {
                body["rho_exp"] = nullptr;
            }
            body["oracle"] = padyn::report::oracle_json(r.oracle);
            if (!csv.empty()) {
                std::ofstream out(csv);
                if (!out) throw padyn::InvalidInput("cannot write " + csv);
                out << padyn::oracle_csv(r.oracle);
            }
            emit(g, "ergodic", input, body);
        } else if (*periodic) {
            padyn::Prime p(map.p);
            if (!qtext.empty()) {
                if (!map.a.empty() || !map.c.empty()) throw padyn::InvalidInput("--q excludes --a and --c");
                Rational qv = literal("q", qtext);
                emit(g, "periodic", {{"p", map.p}, {"q", qv.get_str()}},
                     {{"three_periodic", padyn::report::three_periodic_json(p, qv)}});
            } else {
                if (map.a.empty() || map.c.empty()) throw padyn::InvalidInput("periodic needs --q or both --a and --c");
                auto m = make_map(map);
                Json input = map_input(map);
                input["precision"] = precision;
                emit(g, "periodic", input, {{"two_periodic", padyn::report::two_periodic_json(m, precision)}});
            }
        } else if (*conj) {
            padyn::GeneralMap gm(padyn::Prime(map.p), literal("a", map.a), literal("b", b), literal("c", map.c),
                                 literal("d", d));
            auto r = padyn::conjugate(gm);
            Json input{{"p", map.p}, {"a", gm.a.get_str()}, {"b", gm.b.get_str()}, {"c", gm.c.get_str()},
                       {"d", gm.d.get_str()}};
            emit(g, "conjugate", input, {{"conjugation", padyn::report::conjugation_json(gm, r, g.sampling())}});
        }
    } catch (const padyn::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const padyn::VerificationFailure& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kInternal;
    } catch (const padyn::Error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    }
    return kOk;
}
