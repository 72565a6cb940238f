#pragma once

// JSON and SVG for the command-line tool.  Exact values are written as
// strings: rationals as "p/q", radicals a + b*sqrt(c) as the tuple
// [aN, aD, bN, bD, c].  Readers also accept plain JSON integers wherever an
// integer string is expected.  Every writer uses insertion-ordered objects,
// so equal values always serialize to identical bytes.

#include "aac/artgallery.hpp"
#include "aac/carve3d.hpp"
#include "aac/separation.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <variant>

namespace aac::io {

using json = nlohmann::ordered_json;

class ParseError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Parses JSON text; syntax errors report line and column.
inline json parse_json(const std::string& text, const std::string& source = "input") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json load_json(const std::string& path) { return parse_json(read_file(path), path); }

namespace detail {

inline bool flat(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& x : j)
        if (x.is_structured()) return false;
    return true;
}

inline void write(std::string& out, const json& j, int indent) {
    std::string pad(indent + 2, ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            out += pad + json(it.key()).dump() + ": ";
            write(out, it.value(), indent + 2);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += std::string(indent, ' ') + "}";
    } else if (j.is_array() && !j.empty() && !flat(j)) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            write(out, j[i], indent + 2);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += std::string(indent, ' ') + "]";
    } else if (j.is_array()) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
        out += "]";
    } else {
        out += j.dump();
    }
}

}  // namespace detail

/// Indented JSON with arrays of scalars kept on one line.
inline std::string dump(const json& j) {
    std::string out;
    detail::write(out, j, 0);
    return out + "\n";
}

// ---------------------------------------------------------------------------
// Numbers

inline Integer to_integer(const json& j, const char* what) {
    if (j.is_number_integer()) return Integer(j.dump());
    if (j.is_string()) {
        Integer v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw ParseError(std::string("bad integer in ") + what);
        return v;
    }
    throw ParseError(std::string(what) + ": expected an integer");
}

inline json rational_json(const Rational& v) { return to_string(v); }

inline Rational to_rational(const json& j, const char* what = "rational") {
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
    if (!j.is_string()) throw ParseError(std::string(what) + ": expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const DomainError& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

inline json radical_json(const Radical& x) {
    return json::array({x.a().get_num().get_str(), x.a().get_den().get_str(), x.b().get_num().get_str(),
                        x.b().get_den().get_str(), x.c().get_str()});
}

/// Reads a radical tuple; a single rational string is accepted as well.
inline Radical to_radical(const json& j, const char* what = "radical") {
    if (j.is_string() || j.is_number_integer()) return Radical(to_rational(j, what));
    if (!j.is_array() || j.size() != 5) throw ParseError(std::string(what) + ": expected [aN, aD, bN, bD, c]");
    Integer aD = to_integer(j[1], what), bD = to_integer(j[3], what);
    if (aD == 0 || bD == 0) throw ParseError(std::string(what) + ": zero denominator");
    Rational a = make_rational(to_integer(j[0], what), aD);
    Rational b = make_rational(to_integer(j[2], what), bD);
    Integer c = to_integer(j[4], what);
    if (c < 0) throw ParseError(std::string(what) + ": negative radicand");
    return Radical::make(a, b, Rational(c));
}

/// Exact value with a decimal approximation alongside.
inline json exact_json(const Radical& x, unsigned digits) {
    return json{{"exact", radical_json(x)}, {"decimal", to_decimal(x, digits)}};
}

inline Radical from_exact_json(const json& j) {
    if (j.is_object()) return to_radical(j.at("exact"));
    return to_radical(j);
}

inline json point_json(const RPoint2& p, unsigned digits) {
    return json{{"x", exact_json(p.x, digits)}, {"y", exact_json(p.y, digits)}};
}

inline RPoint2 to_rpoint(const json& j) { return {from_exact_json(j.at("x")), from_exact_json(j.at("y"))}; }

inline json point_json(const Point2& p) { return json::array({rational_json(p.x), rational_json(p.y)}); }

inline Point2 to_point(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("point: expected [x, y]");
    return {to_rational(j[0], "x"), to_rational(j[1], "y")};
}

// ---------------------------------------------------------------------------
// Circle points and maps

inline json circle_point_json(const UnitPoint& p) { return radical_json(p.t()); }
inline json circle_point_json(const RayPoint& p) { return json::array({radical_json(p.x()), radical_json(p.y())}); }

template <class P>
P to_circle_point(const json& j);

template <>
inline UnitPoint to_circle_point<UnitPoint>(const json& j) {
    return UnitPoint(to_radical(j, "unit point"));
}

template <>
inline RayPoint to_circle_point<RayPoint>(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("ray: expected [x, y]");
    return RayPoint(to_radical(j[0], "ray x"), to_radical(j[1], "ray y"));
}

inline json map_json(const LinRat1& f) {
    if (f.is_constant()) return json{{"constant", circle_point_json(f.constant_value())}};
    return json{{"matrix", json::array({json::array({f.p().get_str(), f.q().get_str()}),
                                        json::array({f.r().get_str(), f.s().get_str()})})}};
}

inline json map_json(const LinRat2& f) {
    if (f.is_constant()) return json{{"constant", circle_point_json(f.constant_value())}};
    json den = nullptr;
    if (f.has_denominator()) den = json::array({f.c(0).get_str(), f.c(1).get_str()});
    return json{{"matrix", json::array({json::array({f.m(0, 0).get_str(), f.m(0, 1).get_str()}),
                                        json::array({f.m(1, 0).get_str(), f.m(1, 1).get_str()})})},
                {"denominator", den}};
}

template <class Map>
Map to_map(const json& j);

namespace detail {

inline std::array<Rational, 4> matrix_entries(const json& j) {
    const json& m = j.at("matrix");
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
        m[1].size() != 2)
        throw ParseError("matrix: expected [[a, b], [c, d]]");
    return {to_rational(m[0][0]), to_rational(m[0][1]), to_rational(m[1][0]), to_rational(m[1][1])};
}

}  // namespace detail

template <>
inline LinRat1 to_map<LinRat1>(const json& j) {
    if (j.contains("constant")) return LinRat1::constant(to_circle_point<UnitPoint>(j["constant"]));
    auto e = detail::matrix_entries(j);
    return LinRat1(e[0], e[1], e[2], e[3]);
}

template <>
inline LinRat2 to_map<LinRat2>(const json& j) {
    if (j.contains("constant")) return LinRat2::constant(to_circle_point<RayPoint>(j["constant"]));
    auto e = detail::matrix_entries(j);
    const json& d = j.contains("denominator") ? j["denominator"] : json(nullptr);
    if (d.is_null()) return LinRat2(e[0], e[1], e[2], e[3]);
    if (!d.is_array() || d.size() != 2) throw ParseError("denominator: expected [c1, c2] or null");
    return LinRat2(e[0], e[1], e[2], e[3], to_rational(d[0]), to_rational(d[1]));
}

// ---------------------------------------------------------------------------
// Generators

template <class Rep>
json generator_json(const PiecewiseFunction<Rep>& g) {
    json pieces = json::array();
    for (const auto& p : g.pieces())
        pieces.push_back(json{{"start", circle_point_json(p.start)},
                              {"map", p.map ? map_json(*p.map) : json(nullptr)}});
    return json{{"representation", Rep::tag}, {"pieces", pieces}};
}

template <class Rep>
PiecewiseFunction<Rep> to_generator(const json& j) {
    if (j.value("representation", std::string()) != Rep::tag)
        throw ParseError(std::string("generator: expected representation \"") + Rep::tag + "\"");
    const json& ps = j.at("pieces");
    if (!ps.is_array() || ps.empty()) throw ParseError("generator: pieces must be a nonempty array");
    std::vector<Piece<Rep>> pieces;
    for (const auto& p : ps) {
        Piece<Rep> piece{to_circle_point<typename Rep::Point>(p.at("start")), std::nullopt};
        if (p.contains("map") && !p["map"].is_null()) piece.map = to_map<typename Rep::Map>(p["map"]);
        pieces.push_back(std::move(piece));
    }
    return PiecewiseFunction<Rep>(std::move(pieces));
}

using AnyGenerator = std::variant<PiecewiseFunction<UnitRep>, PiecewiseFunction<RayRep>>;

inline AnyGenerator to_any_generator(const json& j) {
    std::string tag = j.value("representation", std::string());
    if (tag == UnitRep::tag) return to_generator<UnitRep>(j);
    if (tag == RayRep::tag) return to_generator<RayRep>(j);
    throw ParseError("generator: unknown representation \"" + tag + "\"");
}

// ---------------------------------------------------------------------------
// Finite arc instances

template <CirclePoint P>
json arcs_json(const ArcInstance<P>& inst, const char* tag) {
    json arcs = json::array();
    for (const auto& a : inst.arcs) {
        if (a.full)
            arcs.push_back(json{{"full", true}});
        else
            arcs.push_back(json{{"start", circle_point_json(a.start)}, {"end", circle_point_json(a.end)}});
    }
    return json{{"representation", tag}, {"arcs", arcs}};
}

template <CirclePoint P>
ArcInstance<P> to_arcs(const json& j) {
    ArcInstance<P> inst;
    const json& as = j.at("arcs");
    if (!as.is_array()) throw ParseError("arcs: expected an array");
    for (const auto& a : as) {
        if (a.value("full", false))
            inst.arcs.push_back(Arc<P>::whole());
        else
            inst.arcs.push_back({to_circle_point<P>(a.at("start")), to_circle_point<P>(a.at("end"))});
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Polygons, segments and meshes

inline json polygon_json(const Polygon& P) {
    json vs = json::array();
    for (const auto& v : P) vs.push_back(point_json(v));
    return json{{"vertices", vs}};
}

/// Accepts {"vertices": [...]} or a bare vertex array.
inline Polygon to_polygon(const json& j) {
    const json& vs = j.is_object() ? j.at("vertices") : j;
    if (!vs.is_array()) throw ParseError("polygon: expected a vertex array");
    Polygon P;
    for (const auto& v : vs) P.push_back(to_point(v));
    return P;
}

/// Segments as {"segments": [[p, q], ...], "points": [p, ...]}; either key
/// may be missing, and points become zero-length segments.
inline json segments_json(const std::vector<Segment>& segs) {
    json ss = json::array(), ps = json::array();
    for (const auto& s : segs) {
        if (s.a == s.b)
            ps.push_back(point_json(s.a));
        else
            ss.push_back(json::array({point_json(s.a), point_json(s.b)}));
    }
    return json{{"segments", ss}, {"points", ps}};
}

inline std::vector<Segment> to_segments(const json& j) {
    std::vector<Segment> out;
    if (j.contains("segments"))
        for (const auto& s : j["segments"]) {
            if (!s.is_array() || s.size() != 2) throw ParseError("segment: expected [p, q]");
            out.push_back({to_point(s[0]), to_point(s[1])});
        }
    if (j.contains("points"))
        for (const auto& p : j["points"]) {
            Point2 q = to_point(p);
            out.push_back({q, q});
        }
    return out;
}

// ---------------------------------------------------------------------------
// Results

template <CirclePoint P>
json cover_json(const CoverSolution<P>& sol) {
    json pts = json::array();
    for (const auto& p : sol.cover_points) pts.push_back(circle_point_json(p));
    json out{{"k", sol.k}, {"witness", circle_point_json(sol.witness)}, {"cover_points", pts}};
    if (!sol.chosen.empty()) out["chosen"] = sol.chosen;
    return out;
}

template <CirclePoint P>
CoverSolution<P> to_cover(const json& j) {
    CoverSolution<P> sol;
    sol.k = j.at("k").get<long>();
    sol.witness = to_circle_point<P>(j.at("witness"));
    for (const auto& p : j.at("cover_points")) sol.cover_points.push_back(to_circle_point<P>(p));
    if (j.contains("chosen")) sol.chosen = j["chosen"].get<std::vector<std::size_t>>();
    return sol;
}

inline json guard_plan_json(const GuardPlan& plan, unsigned digits) {
    json gs = json::array();
    for (const auto& g : plan.guards)
        gs.push_back(json{{"guard", point_json(g.guard, digits)},
                          {"from", exact_json(g.start.t(), digits)},
                          {"to", exact_json(g.end.t(), digits)}});
    return json{{"k", plan.k}, {"generator_pieces", plan.generator_pieces}, {"guards", gs}};
}

inline GuardPlan to_guard_plan(const json& j) {
    GuardPlan plan;
    plan.k = j.at("k").get<long>();
    plan.generator_pieces = j.value("generator_pieces", std::size_t{0});
    for (const auto& g : j.at("guards"))
        plan.guards.push_back({to_rpoint(g.at("guard")), UnitPoint(from_exact_json(g.at("from"))),
                               UnitPoint(from_exact_json(g.at("to")))});
    return plan;
}

inline json separating_polygon_json(const SeparatingPolygon& poly, unsigned digits) {
    json sides = json::array(), verts = json::array();
    for (const auto& s : poly.sides)
        sides.push_back(json{{"normal", circle_point_json(s.normal)},
                             {"offset", exact_json(s.offset, digits)},
                             {"touch", point_json(s.touch)}});
    for (const auto& v : poly.vertices) verts.push_back(point_json(v, digits));
    return json{{"k", poly.k}, {"sides", sides}, {"vertices", verts}};
}

inline SeparatingPolygon to_separating_polygon(const json& j) {
    SeparatingPolygon poly;
    poly.k = j.at("k").get<long>();
    for (const auto& s : j.at("sides"))
        poly.sides.push_back({to_circle_point<RayPoint>(s.at("normal")), from_exact_json(s.at("offset")),
                              to_point(s.at("touch"))});
    for (const auto& v : j.at("vertices")) poly.vertices.push_back(to_rpoint(v));
    return poly;
}

inline json plane_json(const PlaneKey& k) {
    return json{{"normal", json::array({k.normal[0].get_str(), k.normal[1].get_str(), k.normal[2].get_str()})},
                {"offset", rational_json(k.offset)}};
}

inline PlaneKey to_plane(const json& j) {
    const json& n = j.at("normal");
    if (!n.is_array() || n.size() != 3) throw ParseError("plane normal: expected three integers");
    return {{to_integer(n[0], "normal"), to_integer(n[1], "normal"), to_integer(n[2], "normal")},
            to_rational(j.at("offset"), "offset")};
}

inline json point3_json(const RPoint3& p, unsigned digits) {
    return json{{"x", exact_json(p.x, digits)}, {"y", exact_json(p.y, digits)}, {"z", exact_json(p.z, digits)}};
}

inline RPoint3 to_rpoint3(const json& j) {
    return {from_exact_json(j.at("x")), from_exact_json(j.at("y")), from_exact_json(j.at("z"))};
}

inline json cut_set_json(const CutSet& cs, const std::vector<PlaneGroup>& groups, unsigned digits) {
    json gs = json::array();
    for (const auto& gc : cs.groups) {
        const PlaneGroup& g = groups.at(gc.group);
        json cuts = json::array();
        for (const auto& c : gc.cuts)
            cuts.push_back(json{{"point", point3_json(c.point, digits)},
                                {"direction", point3_json(c.direction, digits)},
                                {"side", point3_json(c.side, digits)}});
        gs.push_back(json{{"group", gc.group},
                          {"plane", plane_json(g.plane)},
                          {"triangles", g.triangles},
                          {"method", to_string(gc.method)},
                          {"section_components", g.section.components},
                          {"cuts", cuts}});
    }
    return json{{"total", cs.total}, {"groups", gs}};
}

/// The exact part of a cut-set document (planar cuts are not serialized).
inline CutSet to_cut_set(const json& j) {
    CutSet cs;
    cs.total = j.at("total").get<long>();
    for (const auto& g : j.at("groups")) {
        GroupCuts gc;
        gc.group = g.at("group").get<std::size_t>();
        std::string m = g.at("method").get<std::string>();
        if (m == "empty-section")
            gc.method = GroupMethod::empty_section;
        else if (m == "few-cuts")
            gc.method = GroupMethod::few_cuts;
        else if (m == "separation")
            gc.method = GroupMethod::separation;
        else
            throw ParseError("unknown group method " + m);
        PlaneKey plane = to_plane(g.at("plane"));
        for (const auto& c : g.at("cuts"))
            gc.cuts.push_back({plane, to_rpoint3(c.at("point")), to_rpoint3(c.at("direction")),
                               to_rpoint3(c.at("side"))});
        cs.groups.push_back(std::move(gc));
    }
    return cs;
}

// ---------------------------------------------------------------------------
// SVG

/// Minimal SVG canvas in world coordinates with y pointing up.
class SvgCanvas {
public:
    explicit SvgCanvas(std::vector<Point2> extent) {
        if (extent.empty()) extent.push_back({0, 0});
        lo_ = hi_ = {to_double(extent[0].x), to_double(extent[0].y)};
        for (const auto& p : extent) grow(to_double(p.x), to_double(p.y));
        double pad = 0.05 * std::max({hi_[0] - lo_[0], hi_[1] - lo_[1], 1.0});
        lo_ = {lo_[0] - pad, lo_[1] - pad};
        hi_ = {hi_[0] + pad, hi_[1] + pad};
        scale_ = 600.0 / std::max(hi_[0] - lo_[0], hi_[1] - lo_[1]);
    }

    void polygon(const std::vector<std::array<double, 2>>& pts, const std::string& style) {
        body_ << "<polygon points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << sx(pts[i][0]) << "," << sy(pts[i][1]);
        body_ << "\" style=\"" << style << "\"/>\n";
    }
    void polygon(const Polygon& P, const std::string& style) { polygon(doubles(P), style); }
    void line(double x0, double y0, double x1, double y1, const std::string& style) {
        body_ << "<line x1=\"" << sx(x0) << "\" y1=\"" << sy(y0) << "\" x2=\"" << sx(x1) << "\" y2=\"" << sy(y1)
              << "\" style=\"" << style << "\"/>\n";
    }
    void circle(double x, double y, double r, const std::string& style) {
        body_ << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"" << r << "\" style=\"" << style
              << "\"/>\n";
    }

    std::string str() const {
        std::ostringstream out;
        double w = (hi_[0] - lo_[0]) * scale_, h = (hi_[1] - lo_[1]) * scale_;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
            << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

    static std::vector<std::array<double, 2>> doubles(const Polygon& P) {
        std::vector<std::array<double, 2>> out;
        for (const auto& p : P) out.push_back({to_double(p.x), to_double(p.y)});
        return out;
    }

private:
    void grow(double x, double y) {
        lo_ = {std::min(lo_[0], x), std::min(lo_[1], y)};
        hi_ = {std::max(hi_[0], x), std::max(hi_[1], y)};
    }
    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return buf;
    }
    std::string sx(double x) const { return fmt((x - lo_[0]) * scale_); }
    std::string sy(double y) const { return fmt((hi_[1] - y) * scale_); }

    std::array<double, 2> lo_{}, hi_{};
    double scale_ = 1;
    std::ostringstream body_;
};

/// The polygon, each guard's visibility fan clipped to its stretch, and the
/// guards themselves.
inline std::string gallery_svg(const Polygon& P, const GuardPlan& plan) {
    SvgCanvas c(P);
    c.polygon(P, "fill:#f4f4f4;stroke:#333;stroke-width:1.5");
    static const char* colors[] = {"#e6550d", "#3182bd", "#31a354", "#756bb1", "#d6616b", "#8c6d31"};
    for (std::size_t i = 0; i < plan.guards.size(); ++i) {
        const auto& g = plan.guards[i];
        std::string col = colors[i % 6];
        double gx = to_double(g.guard.x), gy = to_double(g.guard.y);
        // sample the stretch densely and fan from the guard
        Radical from = g.start.t(), len = ccw_offset(g.end, g.start);
        if (plan.guards.size() == 1) len = Radical(1);
        std::vector<std::array<double, 2>> fan{{gx, gy}};
        const int steps = 96;
        for (int s = 0; s <= steps; ++s) {
            Radical T = from + len * Radical(make_rational(s, steps));
            RPoint2 b = boundary_point(P, T - Radical(Rational(floor_of(T))));
            fan.push_back({to_double(b.x), to_double(b.y)});
        }
        c.polygon(fan, "fill:" + col + ";fill-opacity:0.25;stroke:none");
        for (int s = 0; s < steps; ++s) {
            const auto& a = fan[s + 1];
            const auto& b = fan[s + 2];
            c.line(a[0], a[1], b[0], b[1], "stroke:" + col + ";stroke-width:4");
        }
        c.circle(gx, gy, 5, "fill:" + col + ";stroke:#000");
    }
    return c.str();
}

inline std::string separation_svg(const SeparationInstance& inst, const SeparatingPolygon& poly) {
    std::vector<Point2> ext;
    for (const auto& s : inst.inner) ext.insert(ext.end(), {s.a, s.b});
    for (const auto& s : inst.outer) ext.insert(ext.end(), {s.a, s.b});
    for (const auto& v : poly.vertices) ext.push_back({enclose(v.x, 20).first, enclose(v.y, 20).first});
    SvgCanvas c(ext);
    std::vector<std::array<double, 2>> pv;
    for (const auto& v : poly.vertices) pv.push_back({to_double(v.x), to_double(v.y)});
    c.polygon(pv, "fill:#c6dbef;fill-opacity:0.6;stroke:#08519c;stroke-width:2");
    auto draw = [&](const std::vector<Segment>& ss, const std::string& col) {
        for (const auto& s : ss) {
            double ax = to_double(s.a.x), ay = to_double(s.a.y), bx = to_double(s.b.x), by = to_double(s.b.y);
            if (s.a == s.b)
                c.circle(ax, ay, 3, "fill:" + col);
            else
                c.line(ax, ay, bx, by, "stroke:" + col + ";stroke-width:2");
        }
    };
    draw(inst.inner, "#31a354");
    draw(inst.outer, "#de2d26");
    return c.str();
}

}  // namespace aac::io
