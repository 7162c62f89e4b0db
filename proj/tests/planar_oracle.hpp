#pragma once

// Brute-force oracle for polygons with deleted vertices and open edges. It never calls the
// planar module: cones come from the polytope module applied to the closure, evaluated at
// one representative point per present relatively open piece (vertex, open edge midpoint,
// interior centroid). Faces of such a set are encoded by the representatives they contain.

#include <algorithm>
#include <set>
#include <vector>

#include "facelat/exactgeom.hpp"
#include "facelat/polytope.hpp"

namespace oracle {

using facelat::exactgeom::PolyCone;

struct FlaggedPolygon {
    std::vector<RatVec> verts;    ///< counterclockwise
    std::vector<bool> vpresent;   ///< per vertex
    std::vector<bool> epresent;   ///< open edge i runs from verts[i] to verts[i+1]

    std::size_t size() const { return verts.size(); }
    RatVec mid(std::size_t i) const { return (verts[i] + verts[(i + 1) % size()]) / Rational(2); }
    facelat::polytope::Polytope closure() const { return facelat::polytope::Polytope(verts); }

    /// Convex iff no deleted open edge has two present endpoints.
    bool convex() const {
        for (std::size_t i = 0; i < size(); ++i) {
            if (!epresent[i] && vpresent[i] && vpresent[(i + 1) % size()]) return false;
        }
        return true;
    }

    std::vector<RatVec> reps() const {
        std::vector<RatVec> r;
        for (std::size_t i = 0; i < size(); ++i) {
            if (vpresent[i]) r.push_back(verts[i]);
            if (epresent[i]) r.push_back(mid(i));
        }
        r.push_back(facelat::exactgeom::centroid(verts));
        return r;
    }
};

inline bool is_improper(const PolyCone& k) { return k.is_zero() || k.is_whole_space(); }

inline std::vector<PolyCone> proper_normal_cones(const FlaggedPolygon& p) {
    const auto P = p.closure();
    std::vector<PolyCone> out;
    for (const auto& x : p.reps()) {
        PolyCone n = facelat::polytope::normal_cone_at_point(P, x);
        if (!is_improper(n)) out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<PolyCone> proper_touching_cones(const FlaggedPolygon& p) {
    std::vector<PolyCone> out;
    for (const auto& n : proper_normal_cones(p)) {
        for (const auto& t : facelat::exactgeom::cone_faces(n)) {
            if (!is_improper(t)) out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Representatives lying in F_perp(C, u) (empty when the supremum is not attained).
inline std::vector<RatVec> exposed_reps(const FlaggedPolygon& p, const RatVec& u) {
    const auto P = p.closure();
    const auto s = facelat::polytope::support(P, u);
    std::vector<RatVec> out;
    for (const auto& x : p.reps()) {
        if (dot(u, x) == s.value) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// All exposed faces, as representative sets, probing one relative interior direction of
/// every face of every normal cone of the closure. This reaches every exposed face because
/// F_perp(C, u) only depends on the closure face of u's relative interior.
inline std::set<std::vector<RatVec>> exposed_faces(const FlaggedPolygon& p) {
    const auto P = p.closure();
    std::set<std::vector<RatVec>> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (const auto& t : facelat::exactgeom::cone_faces(facelat::polytope::normal_cone_at_point(P, p.verts[i]))) {
            if (t.is_zero()) continue;
            out.insert(exposed_reps(p, facelat::exactgeom::ri_point(t)));
        }
    }
    out.insert({});
    auto all = p.reps();
    std::sort(all.begin(), all.end());
    out.insert(all);
    return out;
}

/// {x} is an intersection of maximal proper exposed faces.
inline bool point_is_coatom_intersection(const FlaggedPolygon& p, const RatVec& x) {
    const auto ex = exposed_faces(p);
    auto all = p.reps();
    std::sort(all.begin(), all.end());
    std::vector<std::vector<RatVec>> proper;
    for (const auto& f : ex) {
        if (!f.empty() && f != all) proper.push_back(f);
    }
    std::vector<RatVec> meet = all;
    bool any = false;
    for (const auto& f : proper) {
        const bool maximal = std::none_of(proper.begin(), proper.end(), [&](const std::vector<RatVec>& g) {
            return g != f && std::includes(g.begin(), g.end(), f.begin(), f.end());
        });
        if (!maximal || !std::binary_search(f.begin(), f.end(), x)) continue;
        std::vector<RatVec> tmp;
        std::set_intersection(meet.begin(), meet.end(), f.begin(), f.end(), std::back_inserter(tmp));
        meet = tmp;
        any = true;
    }
    return any && meet == std::vector<RatVec>{x};
}

}  // namespace oracle
