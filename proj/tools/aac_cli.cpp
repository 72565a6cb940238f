// Command-line front end.  Results are JSON: on standard output by default,
// or in the --output file, in which case a short summary goes to standard
// output instead.  Exit status: 0 solved, 1 bad input, 2 infeasible,
// 3 no solution within --k_max.

#include "aac/io.hpp"
#include "aac/oracles/carving.hpp"
#include "aac/oracles/cover.hpp"
#include "aac/oracles/gallery.hpp"
#include "aac/oracles/separation.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

using namespace aac;
using io::json;

enum Exit { ok = 0, bad_input = 1, infeasible = 2, k_max_exceeded = 3 };

struct Common {
    std::optional<long> k_max;
    unsigned digits = 50;
    unsigned seed = 1;
    std::string output;
    std::string svg;
    std::string dump_generator;
};

struct Emitter {
    const Common& c;
    std::ostringstream summary;

    void write_file(const std::string& path, const std::string& text) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw io::ParseError("cannot write " + path);
        out << text;
    }

    int finish(const json& result, int code) {
        std::string text = io::dump(result);
        if (c.output.empty()) {
            std::cout << text;
            std::cerr << summary.str();
        } else {
            write_file(c.output, text);
            std::cout << summary.str();
        }
        return code;
    }

    int fail(const std::string& command, int code, const std::string& kind, const std::string& message,
             json extra = json::object()) {
        json reason{{"kind", kind}, {"message", message}};
        for (auto it = extra.begin(); it != extra.end(); ++it) reason[it.key()] = it.value();
        summary << command << ": " << kind << ": " << message << "\n";
        return finish(json{{"status", code == bad_input ? "error" : "infeasible"}, {"command", command},
                           {"reason", reason}},
                      code);
    }
};

template <class Rep>
void maybe_dump(const Emitter& e, const PiecewiseFunction<Rep>& g) {
    if (!e.c.dump_generator.empty()) e.write_file(e.c.dump_generator, io::dump(io::generator_json(g)));
}

long k_max_for(const Common& c, std::size_t pieces) { return c.k_max.value_or(default_k_max(pieces)); }

// ---------------------------------------------------------------------------

template <class Rep>
json solve_generator(Emitter& e, const PiecewiseFunction<Rep>& g) {
    auto sol = solve_analytic(g, k_max_for(e.c, g.size()));
    json pts = json::array();
    for (const auto& p : sol.cover_points) pts.push_back(io::exact_json(p.key(), e.c.digits));
    e.summary << "arc-cover: k = " << sol.k << " (" << g.size() << " generator pieces)\n";
    return json{{"status", "ok"},
                {"command", "arc-cover"},
                {"representation", Rep::tag},
                {"generator_pieces", g.size()},
                {"k", sol.k},
                {"valid", validate_cover(g, sol)},
                {"cover", io::cover_json(sol)},
                {"cover_keys", pts}};
}

template <class Rep>
json solve_arcs(Emitter& e, const ArcInstance<typename Rep::Point>& inst) {
    if (!covers_circle(inst)) throw InfeasibleError("the arcs do not cover the circle");
    auto g = next_generator<Rep>(inst);
    maybe_dump(e, g);
    json out = solve_generator<Rep>(e, g);
    auto greedy = arc_cover_from_point(inst, io::to_cover<typename Rep::Point>(out["cover"]).witness);
    if (greedy.k == out["k"].get<long>()) out["chosen_arcs"] = greedy.chosen;
    out["arcs"] = inst.arcs.size();
    return out;
}

int run_arc_cover(const Common& c, const std::string& generator, const std::string& arcs) {
    Emitter e{c, {}};
    try {
        if (generator.empty() == arcs.empty())
            return e.fail("arc-cover", bad_input, "usage", "give exactly one of --generator and --arcs");
        json result;
        if (!generator.empty()) {
            auto any = io::to_any_generator(io::load_json(generator));
            result = std::visit(
                [&](const auto& g) {
                    maybe_dump(e, g);
                    using G = std::decay_t<decltype(g)>;
                    if constexpr (std::is_same_v<G, PiecewiseFunction<UnitRep>>)
                        return solve_generator<UnitRep>(e, g);
                    else
                        return solve_generator<RayRep>(e, g);
                },
                any);
        } else {
            json j = io::load_json(arcs);
            std::string tag = j.value("representation", std::string(UnitRep::tag));
            if (tag == UnitRep::tag)
                result = solve_arcs<UnitRep>(e, io::to_arcs<UnitPoint>(j));
            else if (tag == RayRep::tag)
                result = solve_arcs<RayRep>(e, io::to_arcs<RayPoint>(j));
            else
                return e.fail("arc-cover", bad_input, "parse", "unknown representation \"" + tag + "\"");
        }
        return e.finish(result, ok);
    } catch (const KMaxExceeded& x) {
        return e.fail("arc-cover", k_max_exceeded, "k-max-exceeded", x.what(),
                      json{{"k_max", x.k_max()}, {"best_turns", x.best_turns()}});
    } catch (const InfeasibleError& x) {
        return e.fail("arc-cover", infeasible, "uncovered", x.what());
    } catch (const CoverError& x) {
        return e.fail("arc-cover", infeasible, "cover", x.what());
    } catch (const std::exception& x) {
        return e.fail("arc-cover", bad_input, "input", x.what());
    }
}

// ---------------------------------------------------------------------------

int run_art_gallery(const Common& c, const std::string& polygon) {
    Emitter e{c, {}};
    try {
        Polygon raw = io::to_polygon(io::load_json(polygon));
        Polygon P = prepare_polygon(raw);
        auto sol = solve_contiguous_art_gallery(raw, {c.k_max, SolveMode::doubling});
        if (sol.generator) maybe_dump(e, sol.generator->g);
        else if (!c.dump_generator.empty())
            e.summary << "art-gallery: star-shaped polygon, no generator to dump\n";
        if (!c.svg.empty()) e.write_file(c.svg, io::gallery_svg(P, sol.plan));
        e.summary << "art-gallery: k = " << sol.plan.k << " guard" << (sol.plan.k == 1 ? "" : "s") << "\n";
        for (const auto& g : sol.plan.guards)
            e.summary << "  guard (" << to_decimal(g.guard.x, 6) << ", " << to_decimal(g.guard.y, 6) << ")\n";
        json out{{"status", "ok"},
                 {"command", "art-gallery"},
                 {"polygon", io::polygon_json(P)},
                 {"star_shaped", !sol.generator.has_value()},
                 {"k", sol.plan.k},
                 {"valid", validate_plan(P, sol.plan)},
                 {"plan", io::guard_plan_json(sol.plan, c.digits)},
                 {"cover", io::cover_json(sol.cover)}};
        return e.finish(out, ok);
    } catch (const KMaxExceeded& x) {
        return e.fail("art-gallery", k_max_exceeded, "k-max-exceeded", x.what(),
                      json{{"k_max", x.k_max()}, {"best_turns", x.best_turns()}});
    } catch (const GeometryError& x) {
        return e.fail("art-gallery", bad_input, "polygon", x.what());
    } catch (const std::exception& x) {
        return e.fail("art-gallery", bad_input, "input", x.what());
    }
}

// ---------------------------------------------------------------------------

int run_separate(const Common& c, const std::string& inner, const std::string& outer) {
    Emitter e{c, {}};
    try {
        auto s1 = io::to_segments(io::load_json(inner));
        auto s2 = outer.empty() ? std::vector<Segment>{} : io::to_segments(io::load_json(outer));
        auto inst = make_separation_instance(s1, s2);
        auto sol = solve_segment_separation(inst, {c.k_max, SolveMode::doubling});
        if (sol.generator) maybe_dump(e, sol.generator->g);
        else if (!c.dump_generator.empty())
            e.summary << "separate: no outer segments, no generator to dump\n";
        if (!c.svg.empty()) e.write_file(c.svg, io::separation_svg(inst, sol.polygon));
        std::string why;
        bool valid = validate_separation(inst, sol.polygon, &why);
        e.summary << "separate: k = " << sol.polygon.k << " sides\n";
        json out{{"status", "ok"},
                 {"command", "separate"},
                 {"k", sol.polygon.k},
                 {"analytic_k", sol.analytic_k},
                 {"valid", valid},
                 {"hull", io::polygon_json(inst.hull)},
                 {"polygon", io::separating_polygon_json(sol.polygon, c.digits)}};
        if (sol.cover) out["cover"] = io::cover_json(*sol.cover);
        if (!valid) out["certificate_failure"] = why;
        return e.finish(out, ok);
    } catch (const KMaxExceeded& x) {
        return e.fail("separate", k_max_exceeded, "k-max-exceeded", x.what(),
                      json{{"k_max", x.k_max()}, {"best_turns", x.best_turns()}});
    } catch (const InfeasibleError& x) {
        return e.fail("separate", infeasible, "outer-meets-hull", x.what());
    } catch (const std::exception& x) {
        return e.fail("separate", bad_input, "input", x.what());
    }
}

// ---------------------------------------------------------------------------

int run_carve3d(const Common& c, const std::string& mesh) {
    Emitter e{c, {}};
    try {
        TriMesh m = load_mesh(mesh);
        auto groups = group_coplanar(m);
        auto cuts = solve_carving(groups, {c.k_max, SolveMode::doubling});
        e.summary << "carve3d: total = " << cuts.total << " cuts over " << groups.size() << " planes\n";
        for (const auto& gc : cuts.groups) {
            const auto& g = groups[gc.group];
            e.summary << "  plane (" << g.plane.normal[0] << ", " << g.plane.normal[1] << ", " << g.plane.normal[2]
                      << ") . x = " << to_string(g.plane.offset) << ": " << g.triangles.size() << " triangle" << (g.triangles.size() == 1 ? "" : "s") << ", "
                      << gc.cuts.size() << " cut" << (gc.cuts.size() == 1 ? "" : "s") << " [" << to_string(gc.method)
                      << "]";
            if (g.section.components > 1)
                e.summary << " (cross-section has " << g.section.components << " components)";
            e.summary << "\n";
        }
        json out{{"status", "ok"}, {"command", "carve3d"}, {"triangles", m.triangles.size()}};
        json cs = io::cut_set_json(cuts, groups, c.digits);
        for (auto it = cs.begin(); it != cs.end(); ++it) out[it.key()] = it.value();
        return e.finish(out, ok);
    } catch (const CarvingInfeasible& x) {
        return e.fail("carve3d", infeasible, "blocked-faces", x.what(), json{{"triangles", x.blocked}});
    } catch (const KMaxExceeded& x) {
        return e.fail("carve3d", k_max_exceeded, "k-max-exceeded", x.what(), json{{"k_max", x.k_max()}});
    } catch (const std::exception& x) {
        return e.fail("carve3d", bad_input, "input", x.what());
    }
}

// ---------------------------------------------------------------------------

struct OracleArgs {
    std::string kind;
    std::string input;
    std::string polygon;
    std::string inner;
    std::string outer;
    int samples = 256;
    bool vertices_only = false;
};

int run_oracle(const Common& c, const OracleArgs& a) {
    Emitter e{c, {}};
    try {
        json out{{"status", "ok"}, {"command", "oracle"}, {"kind", a.kind}};
        auto need = [&](const std::string& v, const char* flag) {
            if (v.empty()) throw io::ParseError(std::string("oracle ") + a.kind + " needs " + flag);
            return v;
        };
        if (a.kind == "interval-cover") {
            json j = io::load_json(need(a.input, "--input"));
            std::vector<Interval> iv;
            for (const auto& x : j.at("intervals")) iv.push_back({io::to_rational(x.at(0)), io::to_rational(x.at(1))});
            out["optimum"] = oracle::brute_interval_optimum(iv);
        } else if (a.kind == "arc-cover") {
            json j = io::load_json(need(a.input, "--input"));
            if (j.value("representation", std::string(UnitRep::tag)) == RayRep::tag)
                out["optimum"] = oracle::brute_arc_optimum(io::to_arcs<RayPoint>(j).arcs);
            else
                out["optimum"] = oracle::brute_arc_optimum(io::to_arcs<UnitPoint>(j).arcs);
        } else if (a.kind == "guard") {
            Polygon P = prepare_polygon(io::to_polygon(io::load_json(need(a.polygon, "--polygon"))));
            out["optimum"] = oracle::gallery_oracle(P, a.vertices_only);
        } else if (a.kind == "point-separation") {
            auto s1 = io::to_segments(io::load_json(need(a.inner, "--inner")));
            auto s2 = io::to_segments(io::load_json(need(a.outer, "--outer")));
            out["optimum"] = oracle::separation_oracle(make_separation_instance(s1, s2));
        } else if (a.kind == "sandwich") {
            auto any = io::to_any_generator(io::load_json(need(a.input, "--input")));
            std::visit(
                [&](const auto& g) {
                    long limit = k_max_for(c, g.size()) + 1;
                    auto s = oracle::sampled_cover(g, limit, a.samples, c.seed);
                    out["samples"] = s.samples;
                    if (!s.best) throw CoverError("no sample completed a turn within " + std::to_string(limit));
                    out["sampled_best"] = *s.best;
                    out["sampled_start"] = io::rational_json(s.start_key);
                    out["bracket"] = json::array({*s.best - 1, *s.best});
                    try {
                        long k = solve_analytic(g, limit).k;
                        out["analytic_k"] = k;
                        out["consistent"] = k == *s.best || k == *s.best - 1;
                    } catch (const CoverError& x) {
                        out["analytic_error"] = x.what();
                    }
                },
                any);
        } else {
            return e.fail("oracle", bad_input, "usage", "unknown oracle kind \"" + a.kind + "\"");
        }
        if (out.contains("optimum")) e.summary << "oracle " << a.kind << ": " << out["optimum"].get<long>() << "\n";
        if (out.contains("bracket"))
            e.summary << "oracle sandwich: optimum in [" << out["bracket"][0].get<long>() << ", "
                      << out["bracket"][1].get<long>() << "]\n";
        return e.finish(out, ok);
    } catch (const std::exception& x) {
        return e.fail("oracle", bad_input, "input", x.what());
    }
}

void add_common(CLI::App* sub, Common& c, bool dump, bool svg) {
    sub->add_option("--k_max", c.k_max, "Largest cover size to try");
    sub->add_option("--decimal-digits", c.digits, "Digits in decimal approximations")->check(CLI::Range(0, 1000));
    sub->add_option("--seed", c.seed, "Seed for randomized sampling");
    sub->add_option("-o,--output", c.output, "Write the result JSON here");
    if (dump) sub->add_option("--dump-generator", c.dump_generator, "Write the next-generator as JSON");
    if (svg) sub->add_option("--svg", c.svg, "Write a drawing of the result");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arc covers, contiguous art galleries, convex separation and polytope carving"};
    app.require_subcommand(1);
    Common c;

    std::string generator, arcs, polygon, inner, outer, mesh;
    OracleArgs oa;

    auto* ac = app.add_subcommand("arc-cover", "Minimum cover for a next-generator or a finite arc instance");
    ac->add_option("--generator", generator, "Generator dump JSON");
    ac->add_option("--arcs", arcs, "Finite arc instance JSON");
    add_common(ac, c, true, false);

    auto* ag = app.add_subcommand("art-gallery", "Fewest guards covering the boundary in contiguous stretches");
    ag->add_option("--polygon", polygon, "Polygon JSON")->required();
    add_common(ag, c, true, true);

    auto* sp = app.add_subcommand("separate", "Fewest-sided convex polygon between two segment sets");
    sp->add_option("--inner", inner, "Segments to enclose")->required();
    sp->add_option("--outer", outer, "Segments to avoid");
    add_common(sp, c, true, true);

    auto* cv = app.add_subcommand("carve3d", "Fewest half-plane cuts freeing every face of a polyhedron");
    cv->add_option("--mesh", mesh, "OFF or OBJ mesh")->required();
    add_common(cv, c, false, false);

    auto* orc = app.add_subcommand("oracle", "Brute-force reference answers");
    orc->add_option("--kind", oa.kind, "interval-cover | arc-cover | guard | point-separation | sandwich")
        ->required()
        ->check(CLI::IsMember({"interval-cover", "arc-cover", "guard", "point-separation", "sandwich"}));
    orc->add_option("--input", oa.input, "Intervals, arcs or generator JSON");
    orc->add_option("--polygon", oa.polygon, "Polygon JSON");
    orc->add_option("--inner", oa.inner, "Inner segments JSON");
    orc->add_option("--outer", oa.outer, "Outer segments JSON");
    orc->add_option("--samples", oa.samples, "Random starts for the sandwich");
    orc->add_flag("--vertices-only", oa.vertices_only, "Restrict guard candidates to vertices");
    add_common(orc, c, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : bad_input;
    }

    if (*ac) return run_arc_cover(c, generator, arcs);
    if (*ag) return run_art_gallery(c, polygon);
    if (*sp) return run_separate(c, inner, outer);
    if (*cv) return run_carve3d(c, mesh);
    return run_oracle(c, oa);
}
