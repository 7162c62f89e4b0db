#pragma once

// Built-in bodies. The JSON files under fixtures/ encode the same bodies; a test keeps
// the two in sync.

#include <map>
#include <string>
#include <vector>

#include "facelat/planar.hpp"
#include "facelat/polytope.hpp"

namespace facelat::fixtures {

using exactgeom::RatVec;
using planar::Feature;
using planar::PlanarBody;
using polytope::Polytope;

inline RatVec v2(const Rational& x, const Rational& y) { return RatVec{x, y}; }

inline Polytope square() { return Polytope({v2(-1, -1), v2(-1, 1), v2(1, -1), v2(1, 1)}); }

inline Polytope cube() {
    std::vector<RatVec> pts;
    for (int x : {-1, 1}) {
        for (int y : {-1, 1}) {
            for (int z : {-1, 1}) pts.push_back(RatVec{x, y, z});
        }
    }
    return Polytope(pts);
}

inline Polytope triangle() { return Polytope({v2(0, 0), v2(2, 0), v2(1, 1)}); }

inline Polytope segment() { return Polytope({RatVec{-1}, RatVec{1}}); }

/// a = (0,0), b = (1,0), c = (0,1) with the unit arc from b to c.
inline PlanarBody quarter_disk() {
    return PlanarBody::closed_body({Feature::segment(v2(0, 0), v2(1, 0)),
                                    Feature::arc(v2(0, 0), 1, v2(1, 0), v2(0, 1)),
                                    Feature::segment(v2(0, 1), v2(0, 0))});
}

/// Square [-1,1]^2 with half disks attached to the sides x = 1 and x = -1. Feature 2 is
/// the top edge; its endpoints are the tangency points.
inline PlanarBody stadium() {
    return PlanarBody::closed_body({Feature::segment(v2(-1, -1), v2(1, -1)),
                                    Feature::arc(v2(1, 0), 1, v2(1, -1), v2(1, 1)),
                                    Feature::segment(v2(1, 1), v2(-1, 1)),
                                    Feature::arc(v2(-1, 0), 1, v2(-1, 1), v2(-1, -1))});
}

/// Disk of radius 5/6 about the origin cut by x <= 1/2. The chord endpoints (1/2, +-2/3)
/// are rational; the arc is split at (-5/6, 0) to keep each piece within a half turn.
inline PlanarBody truncated_disk(bool open_chord = false) {
    const Rational r2(25, 36);
    std::vector<Feature> fs{Feature::segment(v2(Rational(1, 2), Rational(-2, 3)), v2(Rational(1, 2), Rational(2, 3))),
                            Feature::arc(v2(0, 0), r2, v2(Rational(1, 2), Rational(2, 3)), v2(Rational(-5, 6), 0)),
                            Feature::arc(v2(0, 0), r2, v2(Rational(-5, 6), 0), v2(Rational(1, 2), Rational(-2, 3)))};
    if (!open_chord) return PlanarBody::closed_body(std::move(fs));
    fs[0].closed = false;
    return PlanarBody(std::move(fs), {false, false, true});
}

/// Intersection of the unit disks about (3/5, 0) and (-3/5, 0). Corners (0, +-4/5); each
/// arc is split at its midpoint (+-2/5, 0).
inline PlanarBody lens() {
    const RatVec left_c = v2(Rational(-3, 5), 0), right_c = v2(Rational(3, 5), 0);
    return PlanarBody::closed_body({Feature::arc(left_c, 1, v2(0, Rational(-4, 5)), v2(Rational(2, 5), 0)),
                                    Feature::arc(left_c, 1, v2(Rational(2, 5), 0), v2(0, Rational(4, 5))),
                                    Feature::arc(right_c, 1, v2(0, Rational(4, 5)), v2(Rational(-2, 5), 0)),
                                    Feature::arc(right_c, 1, v2(Rational(-2, 5), 0), v2(0, Rational(-4, 5)))});
}

/// Triangle a = (0,0), b = (2,0), c = (1,2) with per-piece flags. Features: 0 = ]a,b[,
/// 1 = ]b,c[, 2 = ]c,a[; junctions: 0 = a, 1 = b, 2 = c.
inline PlanarBody flagged_triangle(const std::vector<bool>& vertex_present, const std::vector<bool>& edge_present) {
    std::vector<Feature> fs{Feature::segment(v2(0, 0), v2(2, 0), edge_present[0]),
                            Feature::segment(v2(2, 0), v2(1, 2), edge_present[1]),
                            Feature::segment(v2(1, 2), v2(0, 0), edge_present[2])};
    return PlanarBody(std::move(fs), vertex_present);
}

/// Triangle with a, c and the open edge ]a,c[ deleted. This encoding reproduces the
/// target counts: three proper touching cones, all normal.
inline PlanarBody cut_triangle() { return flagged_triangle({false, true, false}, {true, true, false}); }

/// cut_triangle with the top vertex c added: one more normal cone, two more touching cones.
inline PlanarBody cut_triangle_apex() { return flagged_triangle({false, true, true}, {true, true, false}); }

/// Closed triangle with the vertex c deleted.
inline PlanarBody triangle_minus_vertex() { return flagged_triangle({true, true, false}, {true, true, true}); }

inline PlanarBody unit_disk() {
    return PlanarBody::closed_body({Feature::arc(v2(0, 0), 1, v2(1, 0), v2(0, 1)),
                                    Feature::arc(v2(0, 0), 1, v2(0, 1), v2(-1, 0)),
                                    Feature::arc(v2(0, 0), 1, v2(-1, 0), v2(0, -1)),
                                    Feature::arc(v2(0, 0), 1, v2(0, -1), v2(1, 0))});
}

inline PlanarBody planar_square() { return PlanarBody::polygon({v2(-1, -1), v2(1, -1), v2(1, 1), v2(-1, 1)}); }

inline const std::map<std::string, PlanarBody (*)()>& planar_registry() {
    static const std::map<std::string, PlanarBody (*)()> r{
        {"quarterdisk", &quarter_disk},
        {"stadium", &stadium},
        {"truncated_disk_closed", [] { return truncated_disk(false); }},
        {"truncated_disk_open", [] { return truncated_disk(true); }},
        {"lens", &lens},
        {"cut_triangle", &cut_triangle},
        {"cut_triangle_apex", &cut_triangle_apex},
        {"triangle_minus_vertex", &triangle_minus_vertex},
        {"unit_disk", &unit_disk},
        {"planar_square", &planar_square},
    };
    return r;
}

inline const std::map<std::string, Polytope (*)()>& polytope_registry() {
    static const std::map<std::string, Polytope (*)()> r{
        {"square", &square}, {"cube", &cube}, {"triangle", &triangle}, {"segment", &segment}};
    return r;
}

}  // namespace facelat::fixtures
