#pragma once

// JSON body files. Coordinates are rational strings ("3/5"); JSON numbers are rejected
// so that every file round-trips exactly.
//
//   {"type": "polytope", "ambient_dim": 2, "vertices": [["1", "0"], ...]}
//   {"type": "planar",
//    "features": [{"kind": "segment", "from": [..], "to": [..], "closed": true},
//                 {"kind": "arc", "center": [..], "radius_sq": "1", "from": [..], "to": [..], "closed": true}],
//    "vertex_closed": [true, ...]}
//
// Vertex j is the start point of feature j. An optional "note" string is kept verbatim.

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "facelat/fixtures.hpp"
#include "facelat/planar.hpp"
#include "facelat/polytope.hpp"
#include "facelat/rational.hpp"

namespace facelat::bodyio {

using json = nlohmann::json;
using exactgeom::RatVec;
using planar::Feature;
using planar::PlanarBody;
using polytope::Polytope;

using Body = std::variant<Polytope, PlanarBody>;

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline Rational rational(const json& j, const std::string& where) {
    if (j.is_number()) {
        throw ParseError(where + ": JSON numbers are not accepted, write the value as a rational string such as \"3/5\"");
    }
    if (!j.is_string()) throw ParseError(where + ": expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline RatVec point(const json& j, const std::string& where, std::size_t dim = 0) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of rational strings");
    if (dim != 0 && j.size() != dim) throw ParseError(where + ": expected " + std::to_string(dim) + " coordinates");
    RatVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = rational(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

inline bool flag(const json& j, const std::string& where) {
    if (!j.is_boolean()) throw ParseError(where + ": expected true or false");
    return j.get<bool>();
}

inline json point_json(const RatVec& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) a.push_back(to_string(v[i]));
    return a;
}

}  // namespace detail

inline Polytope parse_polytope(const json& j) {
    const json& d = detail::field(j, "ambient_dim");
    if (!d.is_number_unsigned()) throw ParseError("ambient_dim must be a positive integer");
    const std::size_t dim = d.get<std::size_t>();
    const json& vs = detail::field(j, "vertices");
    if (!vs.is_array() || vs.empty()) throw ParseError("vertices must be a nonempty array");
    std::vector<RatVec> pts;
    for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(detail::point(vs[i], "vertices[" + std::to_string(i) + "]", dim));
    return Polytope(std::move(pts));
}

inline PlanarBody parse_planar(const json& j) {
    const json& fs = detail::field(j, "features");
    if (!fs.is_array()) throw ParseError("features must be an array");
    std::vector<Feature> features;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const json& f = fs[i];
        const std::string where = "features[" + std::to_string(i) + "]";
        const json& kind = detail::field(f, "kind");
        const bool closed = f.contains("closed") ? detail::flag(f.at("closed"), where + ".closed") : true;
        const RatVec from = detail::point(detail::field(f, "from"), where + ".from", 2);
        const RatVec to = detail::point(detail::field(f, "to"), where + ".to", 2);
        if (kind == "segment") {
            features.push_back(Feature::segment(from, to, closed));
        } else if (kind == "arc") {
            const RatVec c = detail::point(detail::field(f, "center"), where + ".center", 2);
            const Rational r2 = detail::rational(detail::field(f, "radius_sq"), where + ".radius_sq");
            features.push_back(Feature::arc(c, r2, from, to, closed));
        } else {
            throw ParseError(where + ": kind must be \"segment\" or \"arc\"");
        }
    }
    std::vector<bool> vertex_closed(features.size(), true);
    if (j.contains("vertex_closed")) {
        const json& vc = j.at("vertex_closed");
        if (!vc.is_array() || vc.size() != features.size()) {
            throw ParseError("vertex_closed must have one flag per feature");
        }
        for (std::size_t i = 0; i < vc.size(); ++i) vertex_closed[i] = detail::flag(vc[i], "vertex_closed");
    }
    return PlanarBody(std::move(features), std::move(vertex_closed));
}

inline Body parse_body(const json& j) {
    const json& type = detail::field(j, "type");
    if (type == "polytope") return parse_polytope(j);
    if (type == "planar") return parse_planar(j);
    throw ParseError("type must be \"polytope\" or \"planar\"");
}

inline Body parse_body_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_body(j);
}

inline Body load_body(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_body_text(ss.str());
}

inline json to_json(const Polytope& p) {
    json vs = json::array();
    for (const auto& v : p.vertices()) vs.push_back(detail::point_json(v));
    return {{"type", "polytope"}, {"ambient_dim", p.ambient_dim()}, {"vertices", vs}};
}

inline json to_json(const PlanarBody& b) {
    json fs = json::array();
    json vc = json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Feature& f = b.feature(i);
        json o{{"kind", f.is_arc() ? "arc" : "segment"}};
        if (f.is_arc()) {
            o["center"] = detail::point_json(f.center);
            o["radius_sq"] = to_string(f.radius_sq);
        }
        o["from"] = detail::point_json(f.from);
        o["to"] = detail::point_json(f.to);
        o["closed"] = f.closed;
        fs.push_back(o);
        vc.push_back(b.junction_closed(i));
    }
    return {{"type", "planar"}, {"features", fs}, {"vertex_closed", vc}};
}

inline json to_json(const Body& b) {
    return std::visit([](const auto& x) { return to_json(x); }, b);
}

inline void save_body(const Body& b, const std::filesystem::path& path, const std::string& note = {}) {
    json j = to_json(b);
    if (!note.empty()) j["note"] = note;
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

/// FACELAT_FIXTURES if set, else the directory configured at build time.
inline std::filesystem::path fixture_dir() {
    if (const char* env = std::getenv("FACELAT_FIXTURES"); env && *env) return env;
#ifdef FACELAT_DEFAULT_FIXTURES
    return FACELAT_DEFAULT_FIXTURES;
#else
    return "fixtures";
#endif
}

/// A path to a body file, or a fixture name looked up as <fixture_dir>/<name>.json and
/// then among the built-in bodies.
inline Body resolve_body(const std::string& ref) {
    namespace fs = std::filesystem;
    if (fs::is_regular_file(ref)) return load_body(ref);
    const fs::path candidate = fixture_dir() / (ref + ".json");
    if (fs::is_regular_file(candidate)) return load_body(candidate);
    if (const auto& pr = fixtures::planar_registry(); pr.count(ref)) return pr.at(ref)();
    if (const auto& pr = fixtures::polytope_registry(); pr.count(ref)) return pr.at(ref)();
    throw ParseError("no body file or fixture named '" + ref + "'");
}

}  // namespace facelat::bodyio
