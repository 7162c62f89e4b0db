#pragma once

// Faces, exposed faces, normal cones and touching cones of rational polytopes,
// together with polarity, lifting through orthogonal projections and the
// atom/coatom decompositions of normal cones and exposed faces.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "facelat/errors.hpp"
#include "facelat/exactgeom.hpp"
#include "facelat/lattice.hpp"

namespace facelat::polytope {

using exactgeom::LinearSubspace;
using exactgeom::Matrix;
using exactgeom::PolyCone;
using exactgeom::RatVec;

/// Convex hull of finitely many points, stored by its extreme points in lexicographic order.
class Polytope {
public:
    Polytope() = default;

    /// Validates that every given point is extreme; use from_points to discard redundant ones.
    explicit Polytope(std::vector<RatVec> vertices) {
        init(std::move(vertices));
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            if (!is_extreme(verts_, i)) throw InvalidBody("point " + verts_[i].str() + " is not extreme");
        }
    }

    static Polytope from_points(std::vector<RatVec> pts) {
        Polytope p;
        p.init(std::move(pts));
        std::vector<RatVec> keep;
        for (std::size_t i = 0; i < p.verts_.size(); ++i) {
            if (is_extreme(p.verts_, i)) keep.push_back(p.verts_[i]);
        }
        p.init(std::move(keep));
        return p;
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t num_vertices() const { return verts_.size(); }
    const std::vector<RatVec>& vertices() const& { return verts_; }
    std::vector<RatVec> vertices() && { return std::move(verts_); }
    const RatVec& vertex(std::size_t i) const { return verts_.at(i); }
    const exactgeom::AffineSubspace& aff() const { return aff_; }
    /// Translation space lin(P) of the affine hull.
    const LinearSubspace& lin() const { return aff_.dir; }
    std::size_t dim() const { return aff_.dim(); }

    bool contains(const RatVec& x) const { return exactgeom::hull_contains(verts_, x); }
    bool ri_contains(const RatVec& x) const { return exactgeom::ri_contains(verts_, x); }

    friend bool operator==(const Polytope& a, const Polytope& b) { return a.verts_ == b.verts_; }

private:
    void init(std::vector<RatVec> pts) {
        if (pts.empty()) throw InvalidBody("polytope needs at least one point");
        n_ = pts.front().size();
        if (n_ == 0 || n_ > exactgeom::kMaxAmbientDim) {
            throw InvalidBody("ambient dimension must be between 1 and " + std::to_string(exactgeom::kMaxAmbientDim));
        }
        for (const auto& p : pts) {
            if (p.size() != n_) throw DimensionMismatch("points of different dimensions");
        }
        exactgeom::sort_unique(pts);
        verts_ = std::move(pts);
        aff_ = exactgeom::aff_hull(verts_);
    }

    static bool is_extreme(const std::vector<RatVec>& pts, std::size_t i) {
        std::vector<RatVec> others;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j != i) others.push_back(pts[j]);
        }
        return others.empty() || !exactgeom::hull_contains(others, pts[i]);
    }

    std::size_t n_ = 0;
    std::vector<RatVec> verts_;
    exactgeom::AffineSubspace aff_;
};

/// Face given by the sorted indices of its vertices. dim is -1 for the empty face.
/// The exposing normal is a witness only and does not take part in equality.
struct PolyFace {
    std::vector<std::size_t> vertices;
    int dim = -1;
    std::optional<RatVec> normal;

    bool empty() const { return vertices.empty(); }
    friend bool operator==(const PolyFace& a, const PolyFace& b) { return a.vertices == b.vertices; }
    friend bool operator!=(const PolyFace& a, const PolyFace& b) { return !(a == b); }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < vertices.size(); ++i) s += (i ? "," : "") + std::to_string(vertices[i]);
        return s + "}";
    }
};

inline bool face_leq(const PolyFace& a, const PolyFace& b) {
    return std::includes(b.vertices.begin(), b.vertices.end(), a.vertices.begin(), a.vertices.end());
}

inline bool face_order(const PolyFace& a, const PolyFace& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertices < b.vertices;
}

inline bool cone_order(const PolyCone& a, const PolyCone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a < b;
}

using FaceLattice = lattice::FiniteLattice<PolyFace>;
using ConeLattice = lattice::FiniteLattice<PolyCone>;

inline std::vector<RatVec> face_points(const Polytope& p, const PolyFace& f) {
    std::vector<RatVec> pts;
    for (auto i : f.vertices) pts.push_back(p.vertex(i));
    return pts;
}

inline PolyFace make_face(const Polytope& p, std::vector<std::size_t> idx, std::optional<RatVec> normal = {}) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    PolyFace f;
    f.vertices = std::move(idx);
    for (auto i : f.vertices) {
        if (i >= p.num_vertices()) throw NotAFace("vertex index " + std::to_string(i) + " out of range");
    }
    f.dim = f.empty() ? -1 : static_cast<int>(exactgeom::aff_hull(face_points(p, f)).dim());
    f.normal = std::move(normal);
    return f;
}

inline PolyFace whole_face(const Polytope& p) {
    std::vector<std::size_t> all(p.num_vertices());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return make_face(p, all, RatVec(p.ambient_dim()));
}

inline std::string face_label(const Polytope& p, const PolyFace& f) {
    if (f.empty()) return "empty";
    std::string s = "conv{";
    for (std::size_t i = 0; i < f.vertices.size(); ++i) s += (i ? "," : "") + p.vertex(f.vertices[i]).str();
    return s + "}";
}

/// lin(P)^perp, the normal cone of P at its relative interior.
inline LinearSubspace lin_perp(const Polytope& p) { return p.lin().orth_complement(); }

// ---------------------------------------------------------------------------
// Support function and exposed faces.

struct Support {
    Rational value;
    PolyFace face;  ///< F_perp(P,u) with normal u
};

/// h(P,u) and the exposed face F_perp(P,u).
inline Support support(const Polytope& p, const RatVec& u) {
    if (u.size() != p.ambient_dim()) throw DimensionMismatch("direction dimension differs from polytope");
    if (u.is_zero()) throw ZeroDirection("support in direction 0");
    Support s;
    s.value = exactgeom::dot(u, p.vertex(0));
    for (const auto& v : p.vertices()) s.value = std::max<Rational>(s.value, exactgeom::dot(u, v));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < p.num_vertices(); ++i) {
        if (exactgeom::dot(u, p.vertex(i)) == s.value) idx.push_back(i);
    }
    s.face = make_face(p, idx, u);
    return s;
}

/// Supporting hyperplane normals of facets (inside lin P), with the vertex sets they cut out.
/// Candidates come from affinely independent vertex subsets of size dim(P).
inline std::vector<PolyFace> facets(const Polytope& p) {
    const std::size_t n = p.ambient_dim();
    const std::size_t d = p.dim();
    std::vector<PolyFace> out;
    if (d == 0) return out;
    const Matrix perp = lin_perp(p).basis();
    exactgeom::for_each_combination(p.num_vertices(), d, [&](const std::vector<std::size_t>& idx) {
        Matrix rows = perp;
        for (std::size_t k = 1; k < idx.size(); ++k) rows.push_back(p.vertex(idx[k]) - p.vertex(idx[0]));
        Matrix ns = exactgeom::nullspace(rows, n);
        if (ns.size() != 1) return true;
        const RatVec a = exactgeom::primitive(ns.front());
        const Rational c = exactgeom::dot(a, p.vertex(idx[0]));
        bool below = true, above = true;
        for (const auto& v : p.vertices()) {
            int s = sgn(exactgeom::dot(a, v) - c);
            if (s > 0) below = false;
            if (s < 0) above = false;
        }
        for (const RatVec& normal : {a, RatVec(-a)}) {
            if (normal == a ? !below : !above) continue;
            PolyFace f = support(p, normal).face;
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
        }
        return true;
    });
    std::sort(out.begin(), out.end(), face_order);
    return out;
}

// ---------------------------------------------------------------------------
// Face enumeration by two independent routes.

/// Segment closure test: conv(S) is a face iff no point of aff(S) is a convex combination
/// of vertices outside S (such a point would put an open segment through conv(S) that leaves it).
inline bool is_face_vertex_set(const Polytope& p, const std::vector<std::size_t>& s) {
    if (s.empty() || s.size() == p.num_vertices()) return true;
    std::vector<RatVec> in, out;
    for (std::size_t i = 0, k = 0; i < p.num_vertices(); ++i) {
        if (k < s.size() && s[k] == i) {
            in.push_back(p.vertex(i));
            ++k;
        } else {
            out.push_back(p.vertex(i));
        }
    }
    const LinearSubspace quotient = exactgeom::aff_hull(in).dir.orth_complement();
    std::vector<RatVec> projected;
    for (const auto& v : out) projected.push_back(quotient.project(v));
    return !exactgeom::hull_contains(projected, quotient.project(in.front()));
}

/// Faces as closure of facets under intersection, plus the empty face and P.
inline std::vector<PolyFace> faces_by_facet_intersection(const Polytope& p) {
    std::vector<PolyFace> faces{make_face(p, {}), whole_face(p)};
    for (const auto& f : facets(p)) {
        if (std::find(faces.begin(), faces.end(), f) == faces.end()) faces.push_back(f);
    }
    const std::vector<PolyFace> fs = facets(p);
    for (std::size_t done = 0; done < faces.size(); ++done) {
        for (const auto& f : fs) {
            std::vector<std::size_t> inter;
            std::set_intersection(faces[done].vertices.begin(), faces[done].vertices.end(), f.vertices.begin(),
                                  f.vertices.end(), std::back_inserter(inter));
            PolyFace g = make_face(p, inter);
            if (std::find(faces.begin(), faces.end(), g) == faces.end()) faces.push_back(g);
        }
    }
    std::sort(faces.begin(), faces.end(), face_order);
    return faces;
}

/// All faces by brute force over vertex subsets (segment closure test).
inline std::vector<PolyFace> faces_by_subsets(const Polytope& p) {
    const std::size_t m = p.num_vertices();
    if (m > 20) throw InvalidBody("too many vertices for subset enumeration");
    std::vector<PolyFace> faces;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (1ul << i)) s.push_back(i);
        }
        if (is_face_vertex_set(p, s)) faces.push_back(make_face(p, s));
    }
    std::sort(faces.begin(), faces.end(), face_order);
    return faces;
}

inline std::vector<PolyFace> faces(const Polytope& p) {
    return p.num_vertices() <= 16 ? faces_by_subsets(p) : faces_by_facet_intersection(p);
}

inline FaceLattice face_lattice(const Polytope& p) { return FaceLattice::build(faces(p), face_leq); }

/// Exposed faces F_perp(P,u) for u ranging over sums of facet normals, plus the empty face and P.
inline std::vector<PolyFace> exposed_faces(const Polytope& p) {
    std::vector<PolyFace> out{make_face(p, {}), whole_face(p)};
    std::vector<RatVec> normals;
    for (const auto& f : facets(p)) normals.push_back(*f.normal);
    auto add = [&](const RatVec& u) {
        if (u.is_zero()) return;
        PolyFace f = support(p, u).face;
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    };
    if (normals.size() <= 16) {
        for (unsigned long mask = 1; mask < (1ul << normals.size()); ++mask) {
            RatVec u(p.ambient_dim());
            for (std::size_t i = 0; i < normals.size(); ++i) {
                if (mask & (1ul << i)) u += normals[i];
            }
            add(u);
        }
    } else {
        // Sums over the facets sharing each common vertex subset.
        for (const auto& g : faces_by_facet_intersection(p)) {
            RatVec u(p.ambient_dim());
            for (const auto& f : facets(p)) {
                if (face_leq(g, f)) u += *f.normal;
            }
            add(u);
        }
    }
    std::sort(out.begin(), out.end(), face_order);
    return out;
}

inline FaceLattice exposed_face_lattice(const Polytope& p) { return FaceLattice::build(exposed_faces(p), face_leq); }

// ---------------------------------------------------------------------------
// Normal cones and touching cones.

/// N(P,x) = { u : <u, v - x> <= 0 for every vertex v }.
inline PolyCone normal_cone_at_point(const Polytope& p, const RatVec& x) {
    if (!p.contains(x)) throw PointNotInBody(x.str());
    Matrix ineqs;
    for (const auto& v : p.vertices()) ineqs.push_back(x - v);
    return exactgeom::cone_from_constraints(p.ambient_dim(), {}, ineqs);
}

/// N(P,F), evaluated at the vertex centroid of F; the empty face has the whole space.
inline PolyCone normal_cone(const Polytope& p, const PolyFace& f) {
    if (f.empty()) return exactgeom::whole_space(p.ambient_dim());
    return normal_cone_at_point(p, exactgeom::centroid(face_points(p, f)));
}

/// pos of the facet normals of facets containing F, plus lin(P)^perp.
inline PolyCone normal_cone_from_facets(const Polytope& p, const PolyFace& f) {
    if (f.empty()) return exactgeom::whole_space(p.ambient_dim());
    Matrix gens;
    for (const auto& g : facets(p)) {
        if (face_leq(f, g)) gens.push_back(*g.normal);
    }
    const LinearSubspace perp = lin_perp(p);
    for (const auto& b : perp.basis()) {
        gens.push_back(b);
        gens.push_back(-b);
    }
    return exactgeom::pos_hull(gens, p.ambient_dim());
}

inline ConeLattice cone_lattice(std::vector<PolyCone> cones) {
    std::sort(cones.begin(), cones.end(), cone_order);
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    return ConeLattice::build(std::move(cones), exactgeom::is_subcone);
}

inline ConeLattice normal_cone_lattice(const Polytope& p) {
    std::vector<PolyCone> cones;
    for (const auto& f : faces(p)) cones.push_back(normal_cone(p, f));
    return cone_lattice(std::move(cones));
}

/// Nonempty faces of all normal cones.
inline ConeLattice touching_cone_lattice(const Polytope& p) {
    std::vector<PolyCone> cones;
    for (const auto& f : faces(p)) {
        for (auto& c : exactgeom::cone_faces(normal_cone(p, f))) cones.push_back(std::move(c));
    }
    return cone_lattice(std::move(cones));
}

/// T(P,u): the face of N(P, F_perp(P,u)) with u in its relative interior.
inline PolyCone touching_cone_at(const Polytope& p, const RatVec& u) {
    const PolyFace f = support(p, u).face;
    return exactgeom::face_containing_in_ri(normal_cone(p, f), u);
}

/// Smallest exposed face containing F: F_perp(P,v) for v in ri N(P,F).
inline PolyFace sup_exposed(const Polytope& p, const PolyFace& f) {
    if (f.empty()) return f;
    const RatVec v = exactgeom::ri_point(normal_cone(p, f));
    if (v.is_zero()) return whole_face(p);
    return support(p, v).face;
}

struct ExposedMeet {
    PolyFace face;
    std::optional<RatVec> witness;  ///< v in ri conv(U) with F_perp(P,v) = face, when the face is nonempty
    bool witness_ok = true;
};

/// Intersection of F_perp(P,u) over u in U. The zero direction exposes P.
inline ExposedMeet exposed_meet(const Polytope& p, const std::vector<RatVec>& dirs) {
    if (dirs.empty()) throw ZeroDirection("empty direction set");
    PolyFace acc = whole_face(p);
    bool all_zero = true;
    for (const auto& u : dirs) {
        if (u.size() != p.ambient_dim()) throw DimensionMismatch("direction dimension differs from polytope");
        if (u.is_zero()) continue;
        all_zero = false;
        const PolyFace f = support(p, u).face;
        std::vector<std::size_t> inter;
        std::set_intersection(acc.vertices.begin(), acc.vertices.end(), f.vertices.begin(), f.vertices.end(),
                              std::back_inserter(inter));
        acc = make_face(p, inter);
    }
    ExposedMeet r;
    r.face = acc;
    if (acc.empty() || all_zero) return r;
    RatVec v = exactgeom::centroid(dirs);
    if (v.is_zero()) {
        for (const auto& u : dirs) {
            if (!u.is_zero()) {
                v = u / Rational(2);
                break;
            }
        }
    }
    r.witness = v;
    r.witness_ok = support(p, v).face == acc;
    r.face.normal = v;
    return r;
}

// ---------------------------------------------------------------------------
// Polarity.

inline void require_origin_interior(const Polytope& p) {
    if (p.dim() != p.ambient_dim() || !p.ri_contains(RatVec(p.ambient_dim()))) {
        throw OriginNotInterior("the origin is not an interior point");
    }
}

/// P° = { u : <u,x> <= 1 for x in P }.
inline Polytope polar(const Polytope& p) {
    require_origin_interior(p);
    const std::size_t n = p.ambient_dim();
    // Homogenized: t >= 0 and t - <u,v> >= 0; vertices are rays with t > 0, scaled to t = 1.
    Matrix ineqs;
    RatVec t(n + 1);
    t[n] = 1;
    ineqs.push_back(t);
    for (const auto& v : p.vertices()) {
        RatVec row(n + 1);
        for (std::size_t i = 0; i < n; ++i) row[i] = -v[i];
        row[n] = 1;
        ineqs.push_back(row);
    }
    const PolyCone c = exactgeom::cone_from_constraints(n + 1, {}, ineqs);
    std::vector<RatVec> verts;
    for (const auto& r : c.rays) {
        RatVec u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = r[i] / r[n];
        verts.push_back(u);
    }
    return Polytope(verts);
}

/// Conjugate face {x in P° : <x,y> = 1 for y in F}; indices refer to polar(p).
inline PolyFace conjugate_face(const Polytope& p, const PolyFace& f) {
    const Polytope q = polar(p);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < q.num_vertices(); ++i) {
        bool on_all = std::all_of(f.vertices.begin(), f.vertices.end(),
                                  [&](std::size_t j) { return exactgeom::dot(q.vertex(i), p.vertex(j)) == 1; });
        if (on_all) idx.push_back(i);
    }
    return make_face(q, idx);
}

/// pos(F) for a face of p; pos of the empty face is {0}.
inline PolyCone pos_of_face(const Polytope& p, const PolyFace& f) {
    return exactgeom::pos_hull(face_points(p, f), p.ambient_dim());
}

struct PosIsoReport {
    std::size_t exposed_polar = 0, normal = 0, faces_polar = 0, touching = 0;
    lattice::IsoReport exposed_to_normal;
    lattice::IsoReport faces_to_touching;
    bool inverse_ok = true;            ///< rb(P°) ∩ N recovers the face for every proper N
    bool double_conjugate_ok = true;   ///< conjugate of conjugate is the smallest exposed superface
    std::vector<std::string> notes;

    bool pass() const {
        return exposed_to_normal.pass() && faces_to_touching.pass() && inverse_ok && double_conjugate_ok;
    }
};

/// Checks that pos maps the exposed faces of P° onto N(P) and all faces of P° onto T(P).
inline PosIsoReport pos_iso_check(const Polytope& p) {
    if (p.num_vertices() < 2) throw HypothesisFailed("a body with at least two points is required");
    const Polytope q = polar(p);
    PosIsoReport r;
    const FaceLattice fe = exposed_face_lattice(q);
    const FaceLattice fa = face_lattice(q);
    const ConeLattice ln = normal_cone_lattice(p);
    const ConeLattice lt = touching_cone_lattice(p);
    r.exposed_polar = fe.size();
    r.normal = ln.size();
    r.faces_polar = fa.size();
    r.touching = lt.size();
    auto pos = [&](const PolyFace& f) { return pos_of_face(q, f); };
    r.exposed_to_normal = lattice::verify_isomorphism(lattice::make_map(fe, ln, pos, lattice::Direction::Isotone));
    r.faces_to_touching = lattice::verify_isomorphism(lattice::make_map(fa, lt, pos, lattice::Direction::Isotone));
    for (std::size_t i = 0; i < ln.size(); ++i) {
        if (i == ln.bottom() || i == ln.top()) continue;
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < q.num_vertices(); ++j) {
            if (exactgeom::contains(ln[i], q.vertex(j))) idx.push_back(j);
        }
        const PolyFace back = make_face(q, idx);
        if (!fe.index_of(back) || pos(back) != ln[i]) {
            r.inverse_ok = false;
            r.notes.push_back("inverse fails at " + ln[i].str());
        }
    }
    for (const auto& f : faces(p)) {
        const PolyFace hat = conjugate_face(p, f);
        const PolyFace hathat = conjugate_face(q, hat);  // indices refer to polar(q) = p
        if (hathat != sup_exposed(p, f)) {
            r.double_conjugate_ok = false;
            r.notes.push_back("double conjugate differs at " + f.str());
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Orthogonal projections and lifts.

inline Polytope project_polytope(const Polytope& p, const LinearSubspace& v) {
    if (v.ambient_dim() != p.ambient_dim()) throw DimensionMismatch("subspace dimension differs from polytope");
    std::vector<RatVec> pts;
    for (const auto& x : p.vertices()) pts.push_back(v.project(x));
    return Polytope::from_points(pts);
}

/// Vertex points of the set (conv(g) + V^perp) ∩ P, computed by intersecting the
/// homogenized cones over P and over the cylinder conv(g) + V^perp. Never assumes the
/// result is a face.
inline std::vector<RatVec> lift_set_points(const Polytope& p, const LinearSubspace& v,
                                           const std::vector<RatVec>& g_points) {
    if (g_points.empty()) return {};
    const std::size_t n = p.ambient_dim();
    auto homog = [n](const RatVec& x, const Rational& t) {
        RatVec h(n + 1);
        for (std::size_t i = 0; i < n; ++i) h[i] = x[i];
        h[n] = t;
        return h;
    };
    Matrix pc, cyl;
    for (const auto& x : p.vertices()) pc.push_back(homog(x, Rational(1)));
    for (const auto& g : g_points) cyl.push_back(homog(v.project(g), Rational(1)));
    for (const auto& b : v.orth_complement().basis()) {
        cyl.push_back(homog(b, Rational(0)));
        cyl.push_back(homog(-b, Rational(0)));
    }
    const PolyCone meet =
        exactgeom::intersect_cones(exactgeom::pos_hull(pc, n + 1), exactgeom::pos_hull(cyl, n + 1));
    // P is bounded, so the meet is pointed and each ray has positive last coordinate.
    std::vector<RatVec> pts;
    for (const auto& r : meet.rays) {
        RatVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / r[n];
        pts.push_back(x);
    }
    if (pts.empty() && meet.lin.dim() == 0) return {};
    return Polytope::from_points(pts).vertices();
}

/// The lift as a face of p; throws NotAFace if the lifted set is not a face.
inline PolyFace lift_vertex_set(const Polytope& p, const LinearSubspace& v, const std::vector<RatVec>& g_points) {
    const std::vector<RatVec> pts = lift_set_points(p, v, g_points);
    std::vector<std::size_t> idx;
    for (const auto& x : pts) {
        const auto it = std::lower_bound(p.vertices().begin(), p.vertices().end(), x);
        if (it == p.vertices().end() || *it != x) throw NotAFace("lifted set has a non-vertex extreme point " + x.str());
        idx.push_back(static_cast<std::size_t>(it - p.vertices().begin()));
    }
    std::sort(idx.begin(), idx.end());
    const PolyFace f = make_face(p, idx);
    if (!is_face_vertex_set(p, f.vertices)) throw NotAFace("lifted set " + f.str() + " is not a face");
    return f;
}

/// Lift L(F) = (F + V^perp) ∩ P of a face F of the projection; F's indices refer to project_polytope(p, v).
inline PolyFace lift_face(const Polytope& p, const LinearSubspace& v, const PolyFace& f) {
    const Polytope q = project_polytope(p, v);
    for (auto i : f.vertices) {
        if (i >= q.num_vertices()) throw NotAFace("vertex index out of range for the projection");
    }
    if (!is_face_vertex_set(q, f.vertices)) throw NotAFace(f.str() + " is not a face of the projection");
    return lift_vertex_set(p, v, face_points(q, f));
}

/// Vertex points of the self-lift (G + V^perp) ∩ P of a face G of P.
inline std::vector<RatVec> self_lift(const Polytope& p, const LinearSubspace& v, const PolyFace& g) {
    return lift_set_points(p, v, face_points(p, g));
}

struct LiftReport {
    Polytope projection;
    std::vector<PolyFace> lifted;          ///< lifts of all faces of the projection
    std::vector<PolyFace> lifted_exposed;  ///< lifts of exposed faces of the projection
    std::vector<PolyFace> not_invariant;   ///< faces G of P with L(G) != G
    bool lift_is_isomorphism = true;       ///< F(π P) -> lifted faces, isotone, inverse = projection
    bool meets_are_intersections = true;
    bool invariance_characterizes = true;  ///< G is lifted iff L(G) = G
    bool canonical_subspace_agrees = true; ///< lifting through π_{lin P}(V) gives the same faces
    std::vector<std::string> notes;

    bool pass() const {
        return lift_is_isomorphism && meets_are_intersections && invariance_characterizes && canonical_subspace_agrees;
    }
};

inline LiftReport lifted_face_lattices(const Polytope& p, const LinearSubspace& v) {
    LiftReport r;
    r.projection = project_polytope(p, v);
    const Polytope& q = r.projection;
    const FaceLattice fq = face_lattice(q);
    for (const auto& f : fq.elements()) r.lifted.push_back(lift_vertex_set(p, v, face_points(q, f)));
    for (const auto& f : exposed_faces(q)) r.lifted_exposed.push_back(lift_vertex_set(p, v, face_points(q, f)));
    for (auto* list : {&r.lifted, &r.lifted_exposed}) {
        std::sort(list->begin(), list->end(), face_order);
        list->erase(std::unique(list->begin(), list->end()), list->end());
    }
    try {
        const FaceLattice lifted = FaceLattice::build(r.lifted, face_leq);
        auto lift = [&](const PolyFace& f) { return lift_vertex_set(p, v, face_points(q, f)); };
        auto rep = lattice::verify_isomorphism(lattice::make_map(fq, lifted, lift, lattice::Direction::Isotone));
        if (!rep.pass()) {
            r.lift_is_isomorphism = false;
            r.notes.push_back("lift map: " + rep.summary());
        }
        for (const auto& f : fq.elements()) {
            std::vector<RatVec> proj;
            for (const auto& x : face_points(p, lift(f))) proj.push_back(v.project(x));
            if (!f.empty() && Polytope::from_points(proj).vertices() != face_points(q, f)) {
                r.lift_is_isomorphism = false;
                r.notes.push_back("projection does not invert the lift at " + f.str());
            }
        }
        for (std::size_t i = 0; i < lifted.size(); ++i) {
            for (std::size_t j = 0; j < lifted.size(); ++j) {
                std::vector<std::size_t> inter;
                std::set_intersection(lifted[i].vertices.begin(), lifted[i].vertices.end(),
                                      lifted[j].vertices.begin(), lifted[j].vertices.end(),
                                      std::back_inserter(inter));
                if (lifted[lifted.meet(i, j)].vertices != inter) r.meets_are_intersections = false;
            }
        }
    } catch (const NotALattice& e) {
        r.lift_is_isomorphism = false;
        r.notes.push_back(e.what());
    }
    const LinearSubspace u = LinearSubspace::span(
        [&] {
            Matrix m;
            for (const auto& b : v.basis()) m.push_back(p.lin().project(b));
            return m;
        }(),
        p.ambient_dim());
    for (const auto& g : faces(p)) {
        const std::vector<RatVec> lg = self_lift(p, v, g);
        const bool invariant = lg == face_points(p, g);
        if (!invariant) r.not_invariant.push_back(g);
        const bool is_lifted = std::find(r.lifted.begin(), r.lifted.end(), g) != r.lifted.end();
        if (invariant != is_lifted) {
            r.invariance_characterizes = false;
            r.notes.push_back("lift invariance disagrees at " + g.str());
        }
        if (self_lift(p, u, g) != lg) {
            r.canonical_subspace_agrees = false;
            r.notes.push_back("canonical subspace lift differs at " + g.str());
        }
    }
    return r;
}

struct CylinderCheck {
    PolyCone projected_normal;  ///< N(π_V P, π_V a)
    PolyCone cylinder;          ///< (N(P,a) ∩ V) + V^perp
    bool equal() const { return projected_normal == cylinder; }
};

inline CylinderCheck cylinder_normal_check(const Polytope& p, const LinearSubspace& v, const RatVec& a) {
    if (a.size() != p.ambient_dim()) throw DimensionMismatch("point dimension differs from polytope");
    if (!p.contains(a)) throw PointNotInBody(a.str());
    CylinderCheck c;
    c.projected_normal = normal_cone_at_point(project_polytope(p, v), v.project(a));
    const PolyCone restricted = exactgeom::intersect_cones(normal_cone_at_point(p, a), exactgeom::subspace_cone(v));
    c.cylinder = exactgeom::sum_cones(restricted, exactgeom::subspace_cone(v.orth_complement()));
    return c;
}

// ---------------------------------------------------------------------------
// Sharp normal vectors and sharp exposed points.

/// u is sharp normal: every x in ri F_perp(P,u) has u in ri N(P,x).
/// N(P,.) is constant on ri F_perp(P,u), so the vertex centroid decides.
inline bool is_sharp_normal(const Polytope& p, const RatVec& u) {
    const PolyFace f = support(p, u).face;
    return exactgeom::ri_contains(normal_cone_at_point(p, exactgeom::centroid(face_points(p, f))), u);
}

/// x is sharp exposed: every u in ri N(P,x) \ {0} has x in ri F_perp(P,u).
/// For such u, F_perp(P,u) is cut out by the vertices v with <g, v - x> = 0 for every
/// generator g of N(P,x) (a functional nonpositive on N vanishes at an ri point only if
/// it vanishes on N), so one exact evaluation covers the whole relative interior.
inline bool is_sharp_exposed(const Polytope& p, const RatVec& x) {
    const PolyCone n = normal_cone_at_point(p, x);
    if (n.is_zero()) return true;
    const Matrix gens = n.generators();
    std::vector<RatVec> pts;
    for (const auto& v : p.vertices()) {
        bool tight = std::all_of(gens.begin(), gens.end(), [&](const RatVec& g) { return exactgeom::dot(g, v - x) == 0; });
        if (tight) pts.push_back(v);
    }
    return exactgeom::ri_contains(pts, x);
}

// ---------------------------------------------------------------------------
// Decompositions into atoms and coatoms.

struct Decomposition {
    std::vector<std::size_t> parts;  ///< lattice indices, lexicographically smallest set of least size
    std::size_t bound = 0;
    bool found = false;
};

namespace detail {
template <class T, class Combine>
Decomposition search(const lattice::FiniteLattice<T>& L, const std::vector<std::size_t>& candidates, std::size_t target,
                     std::size_t bound, Combine combine) {
    Decomposition d;
    d.bound = bound;
    for (std::size_t k = 1; k <= bound && !d.found; ++k) {
        exactgeom::for_each_combination(candidates.size(), k, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> pick;
            for (auto i : idx) pick.push_back(candidates[i]);
            if (combine(pick) == target) {
                d.parts = pick;
                d.found = true;
                return false;
            }
            return true;
        });
    }
    return d;
}
}  // namespace detail

/// Lattices shared by the decomposition searches; build once per polytope.
struct DecompositionContext {
    const Polytope* p = nullptr;
    ConeLattice normal;
    FaceLattice exposed;
    std::vector<PolyFace> all_faces;
    std::size_t lin_perp_dim = 0;

    static DecompositionContext build(const Polytope& poly) {
        return {&poly, normal_cone_lattice(poly), exposed_face_lattice(poly), faces(poly), lin_perp(poly).dim()};
    }
};

/// Writes a proper normal cone as a join of at most dim N - dim lin(P)^perp atoms of N(P).
inline Decomposition atom_decomposition(const DecompositionContext& ctx, const PolyCone& n) {
    const ConeLattice& ln = ctx.normal;
    const auto t = ln.index_of(n);
    if (!t || *t == ln.bottom() || *t == ln.top()) throw HypothesisFailed(n.str() + " is not a proper normal cone");
    for (const auto& f : exactgeom::cone_faces(n)) {
        if (!ln.index_of(f)) throw HypothesisFailed("touching cone " + f.str() + " inside N is not a normal cone");
    }
    std::vector<std::size_t> cands;
    for (auto a : ln.atoms()) {
        if (ln.leq(a, *t)) cands.push_back(a);
    }
    const std::size_t bound = n.dim() - ctx.lin_perp_dim;
    return detail::search(ln, cands, *t, bound, [&](const std::vector<std::size_t>& s) { return ln.join(s); });
}

/// Writes a proper exposed face as an intersection of at most dim N(P,F) - dim lin(P)^perp
/// coatoms of F_perp(P).
inline Decomposition coatom_decomposition(const DecompositionContext& ctx, const PolyFace& f) {
    const FaceLattice& le = ctx.exposed;
    const auto t = le.index_of(f);
    if (!t || *t == le.bottom() || *t == le.top()) throw HypothesisFailed(f.str() + " is not a proper exposed face");
    const PolyCone n = normal_cone(*ctx.p, f);
    for (const auto& c : exactgeom::cone_faces(n)) {
        if (!ctx.normal.index_of(c)) {
            throw HypothesisFailed("touching cone " + c.str() + " inside N(P,F) is not a normal cone");
        }
    }
    std::vector<std::size_t> cands;
    for (auto c : le.coatoms()) {
        if (le.leq(*t, c)) cands.push_back(c);
    }
    const std::size_t bound = n.dim() - ctx.lin_perp_dim;
    return detail::search(le, cands, *t, bound, [&](const std::vector<std::size_t>& s) { return le.meet(s); });
}

/// Writes a proper exposed face as a join of at most dim F + 1 atoms of F_perp(P).
inline Decomposition minkowski_atom_check(const DecompositionContext& ctx, const PolyFace& f) {
    const FaceLattice& le = ctx.exposed;
    const auto t = le.index_of(f);
    if (!t || *t == le.bottom() || *t == le.top()) throw HypothesisFailed(f.str() + " is not a proper exposed face");
    for (const auto& g : ctx.all_faces) {
        if (face_leq(g, f) && !le.index_of(g)) throw HypothesisFailed("face " + g.str() + " inside F is not exposed");
    }
    std::vector<std::size_t> cands;
    for (auto a : le.atoms()) {
        if (le.leq(a, *t)) cands.push_back(a);
    }
    return detail::search(le, cands, *t, static_cast<std::size_t>(f.dim + 1),
                          [&](const std::vector<std::size_t>& s) { return le.join(s); });
}

/// Writes a proper normal cone N as an intersection of at most dim F_perp(P,N) + 1 coatoms of N(P).
inline Decomposition normal_coatom_decomposition(const DecompositionContext& ctx, const PolyCone& n) {
    const ConeLattice& ln = ctx.normal;
    const auto t = ln.index_of(n);
    if (!t || *t == ln.bottom() || *t == ln.top()) throw HypothesisFailed(n.str() + " is not a proper normal cone");
    const std::vector<PolyFace>& exposed_list = ctx.exposed.elements();
    std::optional<PolyFace> exposed;
    for (const auto& f : exposed_list) {
        if (!f.empty() && normal_cone(*ctx.p, f) == n) exposed = f;
    }
    if (!exposed) throw HypothesisFailed("no exposed face has normal cone " + n.str());
    for (const auto& g : ctx.all_faces) {
        if (face_leq(g, *exposed) && !ctx.exposed.index_of(g)) {
            throw HypothesisFailed("face " + g.str() + " inside F_perp(P,N) is not exposed");
        }
    }
    std::vector<std::size_t> cands;
    for (auto c : ln.coatoms()) {
        if (ln.leq(*t, c)) cands.push_back(c);
    }
    return detail::search(ln, cands, *t, static_cast<std::size_t>(exposed->dim + 1),
                          [&](const std::vector<std::size_t>& s) { return ln.meet(s); });
}

inline Decomposition atom_decomposition(const Polytope& p, const PolyCone& n) {
    return atom_decomposition(DecompositionContext::build(p), n);
}
inline Decomposition coatom_decomposition(const Polytope& p, const PolyFace& f) {
    return coatom_decomposition(DecompositionContext::build(p), f);
}
inline Decomposition minkowski_atom_check(const Polytope& p, const PolyFace& f) {
    return minkowski_atom_check(DecompositionContext::build(p), f);
}
inline Decomposition normal_coatom_decomposition(const Polytope& p, const PolyCone& n) {
    return normal_coatom_decomposition(DecompositionContext::build(p), n);
}

}  // namespace facelat::polytope
