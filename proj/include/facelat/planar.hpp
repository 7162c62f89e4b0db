#pragma once

// Planar convex bodies bounded by segments and circular arcs, possibly with deleted
// boundary pieces. All predicates are exact: arc endpoints are rational points on
// circles with rational center and squared radius, and every angle comparison is a
// sign test of a cross or dot product. Irrational quantities (support values along
// arcs, arc points exposed by a generic direction) only ever enter through
// comparisons against square roots, which are decided by squaring.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "facelat/errors.hpp"
#include "facelat/exactgeom.hpp"
#include "facelat/lattice.hpp"
#include "facelat/rational.hpp"

namespace facelat::planar {

using exactgeom::PolyCone;
using exactgeom::RatVec;

// ---------------------------------------------------------------------------
// Exact helpers.

inline Rational cross(const RatVec& a, const RatVec& b) { return a[0] * b[1] - a[1] * b[0]; }

/// Counterclockwise rotation by a right angle.
inline RatVec rot90(const RatVec& a) { return RatVec{-a[1], a[0]}; }

inline bool same_direction(const RatVec& a, const RatVec& b) { return cross(a, b) == 0 && dot(a, b) > 0; }

inline RatVec dir2(const RatVec& v) { return exactgeom::primitive(v); }

/// Square root of a nonnegative rational when it is rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(rn, rd);
}

/// Sign of a - sqrt(b) for b >= 0.
inline int compare_with_sqrt(const Rational& a, const Rational& b) {
    if (a < 0) return -1;
    const Rational d = a * a - b;
    return sgn(d);
}

/// True iff the angle class of v is [0, pi): upper half plane plus the positive x axis.
inline bool upper_half(const RatVec& v) { return v[1] > 0 || (v[1] == 0 && v[0] > 0); }

// ---------------------------------------------------------------------------
// Bodies.

enum class FeatureKind { Segment, Arc };

/// One boundary piece, traversed counterclockwise. For an arc, from and to lie on the
/// circle and the arc runs counterclockwise about center through an angle in (0, pi].
/// closed refers to the relatively open piece only; endpoints carry their own flags.
struct Feature {
    FeatureKind kind = FeatureKind::Segment;
    RatVec from, to;
    RatVec center;
    Rational radius_sq;
    bool closed = true;

    static Feature segment(RatVec a, RatVec b, bool closed = true) {
        Feature f;
        f.kind = FeatureKind::Segment;
        f.from = std::move(a);
        f.to = std::move(b);
        f.closed = closed;
        return f;
    }
    static Feature arc(RatVec c, Rational r2, RatVec a, RatVec b, bool closed = true) {
        Feature f;
        f.kind = FeatureKind::Arc;
        f.center = std::move(c);
        f.radius_sq = std::move(r2);
        f.from = std::move(a);
        f.to = std::move(b);
        f.closed = closed;
        return f;
    }

    bool is_arc() const { return kind == FeatureKind::Arc; }

    /// Outward normal at the start (primitive integer direction).
    RatVec start_normal() const {
        if (is_arc()) return dir2(from - center);
        const RatVec d = to - from;
        return dir2(RatVec{d[1], -d[0]});
    }
    RatVec end_normal() const {
        if (is_arc()) return dir2(to - center);
        return start_normal();
    }

    std::string str() const {
        std::string s = is_arc() ? "arc[c=" + center.str() + ",r2=" + radius_sq.get_str() + "," : "seg[";
        return s + from.str() + "->" + to.str() + (closed ? "" : ",open") + "]";
    }

    friend bool operator==(const Feature& a, const Feature& b) {
        if (a.kind != b.kind || a.from != b.from || a.to != b.to || a.closed != b.closed) return false;
        return !a.is_arc() || (a.center == b.center && a.radius_sq == b.radius_sq);
    }
    friend bool operator!=(const Feature& a, const Feature& b) { return !(a == b); }
};

/// Convex body in R^2 given by its boundary. Junction j is the start point of feature j
/// and follows feature j-1. The set is the closed body minus every feature and junction
/// whose flag is false.
class PlanarBody {
public:
    PlanarBody() = default;

    PlanarBody(std::vector<Feature> features, std::vector<bool> junction_closed)
        : feats_(std::move(features)), jclosed_(std::move(junction_closed)) {
        validate();
    }

    static PlanarBody closed_body(std::vector<Feature> features) {
        const std::size_t m = features.size();
        return PlanarBody(std::move(features), std::vector<bool>(m, true));
    }

    /// Closed polygon from counterclockwise vertices.
    static PlanarBody polygon(const std::vector<RatVec>& pts) {
        std::vector<Feature> fs;
        for (std::size_t i = 0; i < pts.size(); ++i) fs.push_back(Feature::segment(pts[i], pts[(i + 1) % pts.size()]));
        return closed_body(std::move(fs));
    }

    std::size_t size() const { return feats_.size(); }
    const std::vector<Feature>& features() const& { return feats_; }
    std::vector<Feature> features() && { return std::move(feats_); }
    const Feature& feature(std::size_t i) const { return feats_.at(i); }
    const std::vector<bool>& junction_flags() const& { return jclosed_; }
    std::vector<bool> junction_flags() && { return std::move(jclosed_); }
    bool junction_closed(std::size_t j) const { return jclosed_.at(j); }
    const RatVec& junction(std::size_t j) const { return feats_.at(j).from; }
    std::size_t prev(std::size_t j) const { return (j + size() - 1) % size(); }
    std::size_t next(std::size_t j) const { return (j + 1) % size(); }

    /// Outward normals on the two sides of junction j, in counterclockwise order.
    RatVec junction_in_normal(std::size_t j) const { return feats_[prev(j)].end_normal(); }
    RatVec junction_out_normal(std::size_t j) const { return feats_[j].start_normal(); }
    /// Junction with a two-dimensional normal cone.
    bool is_corner(std::size_t j) const { return cross(junction_in_normal(j), junction_out_normal(j)) > 0; }

    bool is_closed() const {
        return std::all_of(feats_.begin(), feats_.end(), [](const Feature& f) { return f.closed; }) &&
               std::all_of(jclosed_.begin(), jclosed_.end(), [](bool b) { return b; });
    }
    bool is_polygon() const {
        return std::none_of(feats_.begin(), feats_.end(), [](const Feature& f) { return f.is_arc(); });
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < size(); ++i) {
            s += std::string(jclosed_[i] ? "*" : "o") + feats_[i].str();
        }
        return s;
    }

    friend bool operator==(const PlanarBody& a, const PlanarBody& b) {
        return a.feats_ == b.feats_ && a.jclosed_ == b.jclosed_;
    }

private:
    void validate() const {
        const std::size_t m = feats_.size();
        if (m < 2) throw InvalidBody("at least two boundary features are required");
        if (jclosed_.size() != m) throw InvalidBody("one junction flag per feature is required");
        for (std::size_t i = 0; i < m; ++i) {
            const Feature& f = feats_[i];
            if (f.from.size() != 2 || f.to.size() != 2) throw InvalidBody("feature " + std::to_string(i) + " is not planar");
            if (f.from == f.to) throw InvalidBody("feature " + std::to_string(i) + " has coinciding endpoints");
            if (f.to != feats_[(i + 1) % m].from) {
                throw InvalidBody("feature " + std::to_string(i) + " does not end where the next one starts");
            }
            if (f.is_arc()) {
                if (f.center.size() != 2 || f.radius_sq <= 0) throw InvalidBody("arc " + std::to_string(i) + " is degenerate");
                const RatVec a = f.from - f.center, b = f.to - f.center;
                if (dot(a, a) != f.radius_sq || dot(b, b) != f.radius_sq) {
                    throw InvalidBody("arc " + std::to_string(i) + " endpoints are not on its circle");
                }
                if (cross(a, b) < 0) throw InvalidBody("arc " + std::to_string(i) + " spans more than a half turn");
            }
        }
        // Outward normals must turn counterclockwise by exactly one full turn, with
        // every junction turning by less than a half turn.
        std::vector<RatVec> dirs;
        for (std::size_t j = 0; j < m; ++j) {
            const RatVec a = junction_in_normal(j), b = junction_out_normal(j);
            const Rational c = cross(a, b);
            if (c < 0 || (c == 0 && dot(a, b) < 0)) {
                throw InvalidBody("boundary is not convex at junction " + junction(j).str());
            }
            if (c == 0 && !feats_[prev(j)].is_arc() && !feats_[j].is_arc()) {
                throw InvalidBody("collinear consecutive segments at " + junction(j).str());
            }
            dirs.push_back(b);
            const Feature& f = feats_[j];
            if (f.is_arc() && cross(f.start_normal(), f.end_normal()) == 0) dirs.push_back(rot90(f.start_normal()));
            dirs.push_back(f.end_normal());
        }
        std::size_t crossings = 0;
        for (std::size_t k = 0; k < dirs.size(); ++k) {
            if (!upper_half(dirs[k]) && upper_half(dirs[(k + 1) % dirs.size()])) ++crossings;
        }
        if (crossings != 1) throw InvalidBody("boundary normals wind " + std::to_string(crossings) + " times");
        Rational area2 = 0;
        for (std::size_t j = 0; j < m; ++j) area2 += cross(junction(j), junction(next(j)));
        if (area2 <= 0) throw InvalidBody("junction points do not span a counterclockwise polygon");
        // Deleting points keeps the set convex iff no deleted open segment lies between
        // two retained points.
        for (std::size_t i = 0; i < m; ++i) {
            if (!feats_[i].is_arc() && !feats_[i].closed && jclosed_[i] && jclosed_[next(i)]) {
                throw InvalidBody("open segment " + std::to_string(i) + " has both endpoints present: not convex");
            }
        }
    }

    std::vector<Feature> feats_;
    std::vector<bool> jclosed_;
};

// ---------------------------------------------------------------------------
// Cones in R^2.

enum class ConeTag { Zero, Ray, Sector, Halfplane, Line, Plane };

/// Closed convex cone in R^2 in canonical form: primitive directions, a Sector lists its
/// rays counterclockwise with an opening angle below pi, a Line uses the sign-normalized
/// direction, and a Halfplane stores its inner normal.
struct Cone2 {
    ConeTag tag = ConeTag::Zero;
    RatVec d1, d2;

    static Cone2 zero() { return {ConeTag::Zero, {}, {}}; }
    static Cone2 plane() { return {ConeTag::Plane, {}, {}}; }
    static Cone2 ray(const RatVec& d) {
        if (d.is_zero()) throw ZeroDirection("ray direction");
        return {ConeTag::Ray, dir2(d), {}};
    }
    /// Counterclockwise sector from a to b; collapses to a ray when a and b agree.
    static Cone2 sector(const RatVec& a, const RatVec& b) {
        if (same_direction(a, b)) return ray(a);
        if (cross(a, b) <= 0) throw InvalidBody("sector " + a.str() + "," + b.str() + " is not below a half turn");
        return {ConeTag::Sector, dir2(a), dir2(b)};
    }
    static Cone2 halfplane(const RatVec& inner) { return {ConeTag::Halfplane, dir2(inner), {}}; }
    static Cone2 line(const RatVec& d) { return {ConeTag::Line, exactgeom::sign_normalized(d), {}}; }

    int dim() const {
        switch (tag) {
            case ConeTag::Zero: return 0;
            case ConeTag::Ray:
            case ConeTag::Line: return 1;
            default: return 2;
        }
    }

    bool contains(const RatVec& u) const {
        switch (tag) {
            case ConeTag::Zero: return u.is_zero();
            case ConeTag::Ray: return cross(d1, u) == 0 && dot(d1, u) >= 0;
            case ConeTag::Sector: return cross(d1, u) >= 0 && cross(u, d2) >= 0;
            case ConeTag::Halfplane: return dot(d1, u) >= 0;
            case ConeTag::Line: return cross(d1, u) == 0;
            case ConeTag::Plane: return true;
        }
        return false;
    }
    bool ri_contains(const RatVec& u) const {
        switch (tag) {
            case ConeTag::Zero: return u.is_zero();
            case ConeTag::Ray: return cross(d1, u) == 0 && dot(d1, u) > 0;
            case ConeTag::Sector: return cross(d1, u) > 0 && cross(u, d2) > 0;
            case ConeTag::Halfplane: return dot(d1, u) > 0;
            case ConeTag::Line: return cross(d1, u) == 0;
            case ConeTag::Plane: return true;
        }
        return false;
    }

    /// A vector in the relative interior; nonzero unless the cone is a subspace.
    RatVec ri_vector() const {
        switch (tag) {
            case ConeTag::Zero:
            case ConeTag::Plane: return RatVec(2);
            case ConeTag::Sector: return d1 + d2;
            default: return d1;
        }
    }

    /// Nonempty faces, smallest first.
    std::vector<Cone2> faces() const {
        switch (tag) {
            case ConeTag::Zero: return {*this};
            case ConeTag::Ray: return {zero(), *this};
            case ConeTag::Sector: return {zero(), ray(d1), ray(d2), *this};
            case ConeTag::Halfplane: return {line(rot90(d1)), *this};
            case ConeTag::Line:
            case ConeTag::Plane: return {*this};
        }
        return {};
    }

    /// The face having u in its relative interior; u must belong to the cone.
    Cone2 face_containing(const RatVec& u) const {
        for (const auto& f : faces()) {
            if (f.ri_contains(u)) return f;
        }
        throw NotAFace(u.str() + " is not in " + str());
    }

    PolyCone to_polycone() const {
        exactgeom::Matrix g;
        switch (tag) {
            case ConeTag::Zero: break;
            case ConeTag::Ray: g = {d1}; break;
            case ConeTag::Sector: g = {d1, d2}; break;
            case ConeTag::Halfplane: g = {d1, rot90(d1), -rot90(d1)}; break;
            case ConeTag::Line: g = {d1, -d1}; break;
            case ConeTag::Plane: g = {RatVec{1, 0}, RatVec{-1, 0}, RatVec{0, 1}, RatVec{0, -1}}; break;
        }
        return exactgeom::pos_hull(g, 2);
    }

    static Cone2 from_polycone(const PolyCone& k) {
        if (k.n != 2) throw DimensionMismatch("Cone2 lives in R^2");
        const std::size_t l = k.lin.dim();
        if (l == 2) return plane();
        if (l == 1) {
            if (k.rays.empty()) return line(k.lin.basis()[0]);
            return halfplane(k.rays[0]);
        }
        if (k.rays.empty()) return zero();
        if (k.rays.size() == 1) return ray(k.rays[0]);
        const RatVec& a = k.rays[0];
        const RatVec& b = k.rays[1];
        return cross(a, b) > 0 ? sector(a, b) : sector(b, a);
    }

    std::string str() const {
        switch (tag) {
            case ConeTag::Zero: return "Zero";
            case ConeTag::Ray: return "Ray" + d1.str();
            case ConeTag::Sector: return "Sector(" + d1.str() + "," + d2.str() + ")";
            case ConeTag::Halfplane: return "Halfplane" + d1.str();
            case ConeTag::Line: return "Line" + d1.str();
            case ConeTag::Plane: return "Plane";
        }
        return "?";
    }

    friend bool operator==(const Cone2& a, const Cone2& b) { return a.tag == b.tag && a.d1 == b.d1 && a.d2 == b.d2; }
    friend bool operator!=(const Cone2& a, const Cone2& b) { return !(a == b); }
    friend bool operator<(const Cone2& a, const Cone2& b) {
        if (a.tag != b.tag) return a.tag < b.tag;
        if (a.d1 != b.d1) return a.d1 < b.d1;
        return a.d2 < b.d2;
    }
};

inline bool cone_leq(const Cone2& a, const Cone2& b) {
    return exactgeom::is_subcone(a.to_polycone(), b.to_polycone());
}

// ---------------------------------------------------------------------------
// Faces.

enum class FaceTag { Empty, Vertex, Edge, ArcPoint, Whole };

/// Symbolic face. Vertex: junction `index`. Edge: the points of the body on the closed
/// segment `index`. ArcPoint: the point of arc `index` with outward normal `dir`; the
/// point itself is recorded when rational.
struct FaceDescriptor {
    FaceTag tag = FaceTag::Empty;
    std::size_t index = 0;
    RatVec dir;
    std::optional<RatVec> point;

    static FaceDescriptor empty() { return {}; }
    static FaceDescriptor whole() { return {FaceTag::Whole, 0, {}, std::nullopt}; }
    static FaceDescriptor vertex(std::size_t j, const RatVec& p) { return {FaceTag::Vertex, j, {}, p}; }
    static FaceDescriptor edge(std::size_t i) { return {FaceTag::Edge, i, {}, std::nullopt}; }
    static FaceDescriptor arc_point(std::size_t i, const RatVec& normal, std::optional<RatVec> p) {
        return {FaceTag::ArcPoint, i, dir2(normal), std::move(p)};
    }

    bool empty_face() const { return tag == FaceTag::Empty; }
    int dim() const {
        switch (tag) {
            case FaceTag::Empty: return -1;
            case FaceTag::Vertex:
            case FaceTag::ArcPoint: return 0;
            case FaceTag::Edge: return 1;
            case FaceTag::Whole: return 2;
        }
        return -1;
    }

    std::string str() const {
        switch (tag) {
            case FaceTag::Empty: return "Empty";
            case FaceTag::Whole: return "Whole";
            case FaceTag::Vertex: return "Vertex" + point->str();
            case FaceTag::Edge: return "Edge(" + std::to_string(index) + ")";
            case FaceTag::ArcPoint:
                return "ArcPoint(" + std::to_string(index) + ",n=" + dir.str() + (point ? ",x=" + point->str() : "") + ")";
        }
        return "?";
    }

    friend bool operator==(const FaceDescriptor& a, const FaceDescriptor& b) {
        if (a.tag != b.tag) return false;
        if (a.tag == FaceTag::Empty || a.tag == FaceTag::Whole) return true;
        return a.index == b.index && a.dir == b.dir;
    }
    friend bool operator!=(const FaceDescriptor& a, const FaceDescriptor& b) { return !(a == b); }
    friend bool operator<(const FaceDescriptor& a, const FaceDescriptor& b) {
        if (a.tag != b.tag) return a.tag < b.tag;
        if (a.index != b.index) return a.index < b.index;
        return a.dir < b.dir;
    }
};

namespace detail {

inline void require_planar(const RatVec& x) {
    if (x.size() != 2) throw DimensionMismatch("planar bodies live in R^2");
}

/// u strictly between the start and end normals of arc f.
inline bool in_open_arc_range(const Feature& f, const RatVec& u) {
    const RatVec a = f.start_normal(), b = f.end_normal();
    if (cross(a, b) == 0) return cross(a, u) > 0;  // half turn
    return cross(a, u) > 0 && cross(u, b) > 0;
}

/// x on the closed segment [p, q].
inline bool on_segment(const RatVec& p, const RatVec& q, const RatVec& x) {
    const RatVec d = q - p, w = x - p;
    if (cross(d, w) != 0) return false;
    const Rational t = dot(w, d);
    return t >= 0 && t <= dot(d, d);
}

/// x on the relatively open arc f.
inline bool on_open_arc(const Feature& f, const RatVec& x) {
    const RatVec w = x - f.center;
    if (dot(w, w) != f.radius_sq || x == f.from || x == f.to) return false;
    return cross(f.to - f.from, x - f.from) < 0;
}

enum class Location { Outside, Junction, FeatureInterior, Interior };

struct Located {
    Location where = Location::Outside;
    std::size_t index = 0;
};

inline Located locate(const PlanarBody& b, const RatVec& x) {
    require_planar(x);
    const std::size_t m = b.size();
    for (std::size_t j = 0; j < m; ++j) {
        if (b.junction(j) == x) return {Location::Junction, j};
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Feature& f = b.feature(i);
        const bool on = f.is_arc() ? on_open_arc(f, x) : on_segment(f.from, f.to, x);
        if (on) return {Location::FeatureInterior, i};
    }
    // Closure = junction polygon plus one cap per arc; boundary points are handled above.
    bool in_polygon = true;
    for (std::size_t j = 0; j < m && in_polygon; ++j) {
        if (cross(b.junction(b.next(j)) - b.junction(j), x - b.junction(j)) <= 0) in_polygon = false;
    }
    if (in_polygon) return {Location::Interior, 0};
    for (std::size_t i = 0; i < m; ++i) {
        const Feature& f = b.feature(i);
        if (!f.is_arc()) continue;
        const RatVec w = x - f.center;
        if (cross(f.to - f.from, x - f.from) <= 0 && dot(w, w) < f.radius_sq) return {Location::Interior, 0};
    }
    return {Location::Outside, 0};
}

}  // namespace detail

/// The face of b with x in its relative interior.
inline FaceDescriptor face_at(const PlanarBody& b, const RatVec& x) {
    const auto loc = detail::locate(b, x);
    switch (loc.where) {
        case detail::Location::Outside: throw PointNotInBody(x.str() + " is outside the closure");
        case detail::Location::Interior: return FaceDescriptor::whole();
        case detail::Location::Junction:
            if (!b.junction_closed(loc.index)) throw PointNotInBody(x.str() + " is a deleted junction");
            return FaceDescriptor::vertex(loc.index, x);
        case detail::Location::FeatureInterior: {
            const Feature& f = b.feature(loc.index);
            if (!f.closed) throw PointNotInBody(x.str() + " lies on a deleted feature");
            if (f.is_arc()) return FaceDescriptor::arc_point(loc.index, x - f.center, x);
            return FaceDescriptor::edge(loc.index);
        }
    }
    return FaceDescriptor::empty();
}

inline bool in_closure(const PlanarBody& b, const RatVec& x) {
    return detail::locate(b, x).where != detail::Location::Outside;
}

inline bool contains(const PlanarBody& b, const RatVec& x) {
    try {
        face_at(b, x);
        return true;
    } catch (const PointNotInBody&) {
        return false;
    }
}

/// Throws NotAFace unless f names a face of b.
inline void require_face(const PlanarBody& b, const FaceDescriptor& f) {
    switch (f.tag) {
        case FaceTag::Empty:
        case FaceTag::Whole: return;
        case FaceTag::Vertex:
            if (f.index >= b.size() || !b.junction_closed(f.index)) throw NotAFace(f.str() + " is not a present junction");
            return;
        case FaceTag::Edge:
            if (f.index >= b.size() || b.feature(f.index).is_arc() || !b.feature(f.index).closed) {
                throw NotAFace(f.str() + " is not a present segment");
            }
            return;
        case FaceTag::ArcPoint: {
            if (f.index >= b.size()) throw NotAFace(f.str());
            const Feature& a = b.feature(f.index);
            if (!a.is_arc() || !a.closed || !detail::in_open_arc_range(a, f.dir)) {
                throw NotAFace(f.str() + " is not a point of a present open arc");
            }
            return;
        }
    }
}

/// x belongs to the face f of b.
inline bool face_contains(const PlanarBody& b, const FaceDescriptor& f, const RatVec& x) {
    if (f.tag == FaceTag::Empty || !contains(b, x)) return false;
    const FaceDescriptor g = face_at(b, x);
    if (g == f || f.tag == FaceTag::Whole) return true;
    if (f.tag == FaceTag::Edge && g.tag == FaceTag::Vertex) return g.index == f.index || g.index == b.next(f.index);
    return false;
}

/// f is included in g (both faces of b).
inline bool face_leq(const PlanarBody& b, const FaceDescriptor& f, const FaceDescriptor& g) {
    if (f.tag == FaceTag::Empty || g.tag == FaceTag::Whole || f == g) return true;
    if (f.tag == FaceTag::Vertex && g.tag == FaceTag::Edge) return f.index == g.index || f.index == b.next(g.index);
    return false;
}

/// N(B, F); N(B, empty) is the whole plane by convention.
inline Cone2 normal_cone(const PlanarBody& b, const FaceDescriptor& f) {
    require_face(b, f);
    switch (f.tag) {
        case FaceTag::Empty: return Cone2::plane();
        case FaceTag::Whole: return Cone2::zero();
        case FaceTag::Vertex: return Cone2::sector(b.junction_in_normal(f.index), b.junction_out_normal(f.index));
        case FaceTag::Edge: return Cone2::ray(b.feature(f.index).start_normal());
        case FaceTag::ArcPoint: return Cone2::ray(f.dir);
    }
    return Cone2::plane();
}

inline Cone2 normal_cone_at_point(const PlanarBody& b, const RatVec& x) { return normal_cone(b, face_at(b, x)); }

/// F_perp(B, u): the points of B attaining the supremum of <u, .>; Empty when the
/// supremum over the closure is only attained at deleted points.
inline FaceDescriptor exposed_face(const PlanarBody& b, const RatVec& u) {
    detail::require_planar(u);
    if (u.is_zero()) throw ZeroDirection("exposed face needs u != 0");
    const std::size_t m = b.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Feature& f = b.feature(i);
        if (f.is_arc() || !same_direction(f.start_normal(), u)) continue;
        if (f.closed) return FaceDescriptor::edge(i);
        if (b.junction_closed(i)) return FaceDescriptor::vertex(i, b.junction(i));
        if (b.junction_closed(b.next(i))) return FaceDescriptor::vertex(b.next(i), b.junction(b.next(i)));
        return FaceDescriptor::empty();
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Feature& f = b.feature(i);
        if (!f.is_arc() || !detail::in_open_arc_range(f, u)) continue;
        if (!f.closed) return FaceDescriptor::empty();
        std::optional<RatVec> p;
        if (const auto s = exact_sqrt(f.radius_sq / dot(u, u))) p = f.center + u * *s;
        return FaceDescriptor::arc_point(i, u, p);
    }
    for (std::size_t j = 0; j < m; ++j) {
        const RatVec a = b.junction_in_normal(j), c = b.junction_out_normal(j);
        const bool in_sector = cross(a, u) >= 0 && cross(u, c) >= 0 && (dot(a, u) > 0 || dot(c, u) > 0);
        if (!in_sector) continue;
        return b.junction_closed(j) ? FaceDescriptor::vertex(j, b.junction(j)) : FaceDescriptor::empty();
    }
    throw InvalidBody("direction " + u.str() + " is not covered by the boundary normals");
}

/// Sign of t - h(B, u), where h is the support function (supremum over the closure).
inline int compare_support(const PlanarBody& b, const RatVec& u, const Rational& t) {
    bool attained = false;
    auto fold = [&](int s) {
        if (s == 0) attained = true;
        return s < 0;
    };
    for (std::size_t j = 0; j < b.size(); ++j) {
        const Rational d = t - dot(u, b.junction(j));
        if (fold(sgn(d))) return -1;
    }
    for (const auto& f : b.features()) {
        if (!f.is_arc() || !detail::in_open_arc_range(f, u)) continue;
        const Rational d = t - dot(u, f.center);
        const Rational r2u2 = f.radius_sq * dot(u, u);
        if (fold(compare_with_sqrt(d, r2u2))) return -1;
    }
    return attained ? 0 : 1;
}

/// Membership of u in N(B, F) for every x in the relative interior of F is the same
/// statement; this is the sharp normal test used to decide normality of touching cones.
inline bool is_sharp_normal(const PlanarBody& b, const RatVec& u) {
    const FaceDescriptor f = exposed_face(b, u);
    if (f.empty_face()) return true;  // vacuous: no x in ri F_perp
    return normal_cone(b, f).ri_contains(u);
}

/// Direct decision whether c equals N(B, x) for some x in B (E counts as N(B, empty)).
inline bool is_normal_cone(const PlanarBody& b, const Cone2& c) {
    const std::size_t m = b.size();
    switch (c.tag) {
        case ConeTag::Zero:
        case ConeTag::Plane: return true;
        case ConeTag::Halfplane:
        case ConeTag::Line: return false;
        case ConeTag::Sector:
            for (std::size_t j = 0; j < m; ++j) {
                if (b.junction_closed(j) && b.is_corner(j) && dir2(b.junction_in_normal(j)) == c.d1 &&
                    dir2(b.junction_out_normal(j)) == c.d2) {
                    return true;
                }
            }
            return false;
        case ConeTag::Ray:
            for (std::size_t i = 0; i < m; ++i) {
                const Feature& f = b.feature(i);
                if (!f.closed) continue;
                if (!f.is_arc() && f.start_normal() == c.d1) return true;
                if (f.is_arc() && detail::in_open_arc_range(f, c.d1)) return true;
            }
            for (std::size_t j = 0; j < m; ++j) {
                if (b.junction_closed(j) && !b.is_corner(j) && b.junction_in_normal(j) == c.d1) return true;
            }
            return false;
    }
    return false;
}

struct TouchingCone {
    Cone2 cone;
    bool is_normal = false;  ///< decided by the sharp normal test on a relative interior vector
};

/// T(B, u): the face of N(B, F_perp(B, u)) with u in its relative interior.
inline TouchingCone touching_cone(const PlanarBody& b, const RatVec& u) {
    const FaceDescriptor f = exposed_face(b, u);
    if (f.empty_face()) throw UndefinedTouchingCone("F_perp(B," + u.str() + ") is empty");
    const Cone2 t = normal_cone(b, f).face_containing(u);
    return {t, is_sharp_normal(b, t.ri_vector())};
}

/// sup_perp(F): F_perp(B, v) for v in ri N(B, F), the smallest exposed face containing F.
inline FaceDescriptor sup_exposed(const PlanarBody& b, const FaceDescriptor& f) {
    require_face(b, f);
    if (f.tag == FaceTag::Empty || f.tag == FaceTag::Whole) return f;
    return exposed_face(b, normal_cone(b, f).ri_vector());
}

inline bool is_exposed(const PlanarBody& b, const FaceDescriptor& f) { return sup_exposed(b, f) == f; }

/// Representative relative interior point of arc i, as a face.
inline FaceDescriptor arc_representative(const PlanarBody& b, std::size_t i) {
    const Feature& f = b.feature(i);
    const RatVec a = f.start_normal(), c = f.end_normal();
    const RatVec mid = cross(a, c) == 0 ? rot90(a) : a + c;
    return exposed_face(b, mid);
}

/// Empty, Whole, every present junction and segment, and one point per present arc.
/// For polygons these are all faces.
inline std::vector<FaceDescriptor> special_faces(const PlanarBody& b) {
    std::vector<FaceDescriptor> out{FaceDescriptor::empty(), FaceDescriptor::whole()};
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (b.junction_closed(j)) out.push_back(FaceDescriptor::vertex(j, b.junction(j)));
        const Feature& f = b.feature(j);
        if (!f.closed) continue;
        out.push_back(f.is_arc() ? arc_representative(b, j) : FaceDescriptor::edge(j));
    }
    std::sort(out.begin(), out.end());
    return out;
}

using FaceLattice = lattice::FiniteLattice<FaceDescriptor>;
using ConeLattice = lattice::FiniteLattice<PolyCone>;

inline FaceLattice special_face_lattice(const PlanarBody& b, const std::vector<FaceDescriptor>& extra = {}) {
    auto fs = special_faces(b);
    for (const auto& e : extra) {
        require_face(b, e);
        if (std::find(fs.begin(), fs.end(), e) == fs.end()) fs.push_back(e);
    }
    std::sort(fs.begin(), fs.end());
    return FaceLattice::build(fs, [&](const FaceDescriptor& x, const FaceDescriptor& y) { return face_leq(b, x, y); });
}

/// Exposed special faces ordered by inclusion (a finite part of F_perp(B)).
inline FaceLattice special_exposed_lattice(const PlanarBody& b, const std::vector<FaceDescriptor>& extra = {}) {
    std::vector<FaceDescriptor> fs;
    for (const auto& f : special_face_lattice(b, extra).elements()) {
        if (is_exposed(b, f)) fs.push_back(f);
    }
    return FaceLattice::build(fs, [&](const FaceDescriptor& x, const FaceDescriptor& y) { return face_leq(b, x, y); });
}

/// The antitone map F -> N(B, F) on the exposed special faces.
inline lattice::IsoReport special_antitone_check(const PlanarBody& b) {
    const FaceLattice fe = special_exposed_lattice(b);
    std::vector<PolyCone> cones;
    for (const auto& f : fe.elements()) cones.push_back(normal_cone(b, f).to_polycone());
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    const ConeLattice ln = ConeLattice::build(cones, [](const PolyCone& x, const PolyCone& y) {
        return exactgeom::is_subcone(x, y);
    });
    return lattice::verify_isomorphism(lattice::make_map(
        fe, ln, [&](const FaceDescriptor& f) { return normal_cone(b, f).to_polycone(); }, lattice::Direction::Antitone));
}

inline std::vector<FaceDescriptor> non_exposed_faces(const PlanarBody& b) {
    std::vector<FaceDescriptor> out;
    for (const auto& f : special_faces(b)) {
        if (!is_exposed(b, f)) out.push_back(f);
    }
    return out;
}

/// Proper touching cones that are not normal cones. Touching cones are the faces of normal
/// cones, so only boundary rays of present corner sectors can qualify.
inline std::vector<Cone2> touching_not_normal(const PlanarBody& b) {
    std::vector<Cone2> out;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!b.junction_closed(j) || !b.is_corner(j)) continue;
        for (const auto& d : {b.junction_in_normal(j), b.junction_out_normal(j)}) {
            const Cone2 r = Cone2::ray(d);
            if (!is_normal_cone(b, r)) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Finite cone summary of a polygonal body (all of its normal and touching cones).
struct ConeSummary {
    std::vector<Cone2> proper_normal;
    std::vector<Cone2> proper_touching;
};

inline ConeSummary finite_cone_summary(const PlanarBody& b) {
    if (!b.is_polygon()) throw UnsupportedForBodyType("cone summaries are finite only for polygons");
    ConeSummary s;
    for (const auto& f : special_faces(b)) {
        const Cone2 n = normal_cone(b, f);
        if (n.tag == ConeTag::Zero || n.tag == ConeTag::Plane) continue;
        s.proper_normal.push_back(n);
        for (const auto& t : n.faces()) {
            if (t.tag != ConeTag::Zero) s.proper_touching.push_back(t);
        }
    }
    for (auto* v : {&s.proper_normal, &s.proper_touching}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return s;
}

// ---------------------------------------------------------------------------
// Two-dimensional rules.

struct RuleReport {
    bool pass = true;
    std::size_t checked = 0;
    std::vector<std::string> notes;
};

/// Number of present segments having the point face f as an endpoint.
inline std::size_t incident_edges(const PlanarBody& b, const FaceDescriptor& f) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Feature& e = b.feature(i);
        if (!e.is_arc() && e.closed && face_leq(b, f, FaceDescriptor::edge(i))) ++k;
    }
    return k;
}

/// Under T(B) = N(B): a face is non-exposed iff it is a point ending exactly one segment.
inline RuleReport check_2d_nonexposed_rule(const PlanarBody& b) {
    const auto bad = touching_not_normal(b);
    if (!bad.empty()) throw HypothesisFailed(bad.front().str() + " is a touching cone but not a normal cone");
    RuleReport r;
    for (const auto& f : special_faces(b)) {
        if (f.tag == FaceTag::Empty || f.tag == FaceTag::Whole) continue;
        ++r.checked;
        const bool exposed = is_exposed(b, f);
        if (f.tag == FaceTag::Edge) {
            if (!exposed) {
                r.pass = false;
                r.notes.push_back(f.str() + " is a one-dimensional face but not exposed");
            }
            continue;
        }
        const bool ends_one = incident_edges(b, f) == 1;
        if (exposed == ends_one) {
            r.pass = false;
            r.notes.push_back(f.str() + (exposed ? " ends a unique segment but is exposed"
                                                 : " is non-exposed but does not end a unique segment"));
        }
    }
    return r;
}

/// Boundary points with two linearly independent normal vectors.
inline std::vector<RatVec> singular_points(const PlanarBody& b) {
    std::vector<RatVec> out;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (b.junction_closed(j) && b.is_corner(j)) out.push_back(b.junction(j));
    }
    return out;
}

/// Under T(B) = N(B): every singular point is the intersection of two boundary segments.
inline RuleReport check_2d_smoothness(const PlanarBody& b) {
    const auto bad = touching_not_normal(b);
    if (!bad.empty()) throw HypothesisFailed(bad.front().str() + " is a touching cone but not a normal cone");
    RuleReport r;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!b.junction_closed(j) || !b.is_corner(j)) continue;
        ++r.checked;
        const Feature& in = b.feature(b.prev(j));
        const Feature& out = b.feature(j);
        if (in.is_arc() || out.is_arc() || !in.closed || !out.closed) {
            r.pass = false;
            r.notes.push_back(b.junction(j).str() + " is singular but not where two boundary segments meet");
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Coatom and atom decompositions on the special lattices.

struct CoatomReport {
    FaceDescriptor face;
    bool hypothesis_holds = true;            ///< every touching cone inside N(B,F) is normal
    std::vector<Cone2> non_normal_touching;  ///< witnesses when the hypothesis fails
    bool is_coatom_intersection = false;
    std::vector<FaceDescriptor> coatoms;     ///< smallest family found
    std::size_t bound = 0;                   ///< dim N(B,F) - dim lin(B)^perp
    std::string note;

    bool consistent() const { return !hypothesis_holds || (is_coatom_intersection && coatoms.size() <= bound); }
};

namespace detail {

template <class Combine>
std::optional<std::vector<std::size_t>> smallest_family(const std::vector<std::size_t>& cands, std::size_t target,
                                                        std::size_t max_size, Combine combine) {
    std::optional<std::vector<std::size_t>> found;
    for (std::size_t k = 1; k <= max_size && k <= cands.size() && !found; ++k) {
        exactgeom::for_each_combination(cands.size(), k, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> pick;
            for (auto i : idx) pick.push_back(cands[i]);
            if (combine(pick) != target) return true;
            found = pick;
            return false;
        });
    }
    return found;
}

}  // namespace detail

inline CoatomReport coatom_check_planar(const PlanarBody& b, const FaceDescriptor& f) {
    require_face(b, f);
    if (f.tag == FaceTag::Empty || f.tag == FaceTag::Whole || !is_exposed(b, f)) {
        throw NotAFace(f.str() + " is not a proper exposed face");
    }
    CoatomReport r;
    r.face = f;
    const Cone2 n = normal_cone(b, f);
    r.bound = static_cast<std::size_t>(n.dim());
    for (const auto& t : n.faces()) {
        if (!is_normal_cone(b, t)) r.non_normal_touching.push_back(t);
    }
    r.hypothesis_holds = r.non_normal_touching.empty();
    const FaceLattice le = special_exposed_lattice(b, {f});
    const std::size_t t = *le.index_of(f);
    std::vector<std::size_t> cands;
    for (auto c : le.coatoms()) {
        if (le.leq(t, c)) cands.push_back(c);
    }
    const auto fam = detail::smallest_family(cands, t, cands.size(),
                                             [&](const std::vector<std::size_t>& s) { return le.meet(s); });
    if (fam) {
        r.is_coatom_intersection = true;
        for (auto i : *fam) r.coatoms.push_back(le[i]);
    }
    if (r.hypothesis_holds) {
        r.note = r.is_coatom_intersection && r.coatoms.size() <= r.bound ? "intersection of coatoms within the bound"
                                                                         : "violation: hypothesis holds but no decomposition";
    } else {
        r.note = r.is_coatom_intersection ? "hypothesis fails yet the face is an intersection of coatoms (no converse)"
                                          : "hypothesis fails; the criterion is sufficient only";
    }
    return r;
}

struct AtomReport {
    FaceDescriptor face;
    bool hypothesis_holds = true;  ///< every face inside F is exposed
    bool found = false;
    std::vector<FaceDescriptor> atoms;
    std::size_t bound = 0;  ///< dim F + 1
};

/// Searches for at most dim F + 1 atoms of the exposed lattice whose join is F.
inline AtomReport minkowski_atom_check_planar(const PlanarBody& b, const FaceDescriptor& f) {
    require_face(b, f);
    if (f.tag == FaceTag::Empty || f.tag == FaceTag::Whole || !is_exposed(b, f)) {
        throw NotAFace(f.str() + " is not a proper exposed face");
    }
    AtomReport r;
    r.face = f;
    r.bound = static_cast<std::size_t>(f.dim() + 1);
    for (const auto& g : special_faces(b)) {
        if (g.tag != FaceTag::Empty && face_leq(b, g, f) && !is_exposed(b, g)) r.hypothesis_holds = false;
    }
    const FaceLattice le = special_exposed_lattice(b, {f});
    const std::size_t t = *le.index_of(f);
    std::vector<std::size_t> cands;
    for (auto a : le.atoms()) {
        if (le.leq(a, t)) cands.push_back(a);
    }
    const auto fam =
        detail::smallest_family(cands, t, r.bound, [&](const std::vector<std::size_t>& s) { return le.join(s); });
    if (fam) {
        r.found = true;
        for (auto i : *fam) r.atoms.push_back(le[i]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Partition of the plane by touching cones.

/// Every touching cone whose relative interior can contain u: faces of the normal cones at
/// present junctions and segments, plus the arc point ray through u.
inline std::vector<Cone2> touching_candidates(const PlanarBody& b, const RatVec& u) {
    std::vector<Cone2> out;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!b.junction_closed(j)) continue;
        for (const auto& t : normal_cone(b, FaceDescriptor::vertex(j, b.junction(j))).faces()) out.push_back(t);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Feature& f = b.feature(i);
        if (!f.closed) continue;
        if (!f.is_arc()) out.push_back(Cone2::ray(f.start_normal()));
        if (f.is_arc() && detail::in_open_arc_range(f, u)) out.push_back(Cone2::ray(u));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct PartitionReport {
    bool pass = true;
    std::size_t checked = 0;
    std::vector<std::string> notes;
};

/// Each nonzero direction lies in the relative interior of exactly one touching cone
/// other than the plane, and that cone is T(B, u).
inline PartitionReport partition_check_planar(const PlanarBody& b, const std::vector<RatVec>& dirs) {
    PartitionReport r;
    for (const auto& u : dirs) {
        if (u.is_zero()) throw ZeroDirection("partition check direction");
        ++r.checked;
        std::vector<Cone2> hits;
        for (const auto& c : touching_candidates(b, u)) {
            if (c.ri_contains(u)) hits.push_back(c);
        }
        if (hits.size() != 1) {
            r.pass = false;
            r.notes.push_back(u.str() + " lies in " + std::to_string(hits.size()) + " relative interiors");
            continue;
        }
        try {
            if (touching_cone(b, u).cone != hits.front()) {
                r.pass = false;
                r.notes.push_back(u.str() + ": T(B,u) differs from the covering cone " + hits.front().str());
            }
        } catch (const UndefinedTouchingCone& e) {
            r.pass = false;
            r.notes.push_back(e.what());
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Polarity.

inline void require_polar_hypotheses(const PlanarBody& b) {
    if (!b.is_closed()) throw InvalidBody("polar bodies are defined here for closed bodies only");
    if (detail::locate(b, RatVec(2)).where != detail::Location::Interior) {
        throw OriginNotInterior("the origin is not an interior point");
    }
    for (const auto& f : b.features()) {
        if (f.is_arc() && !f.center.is_zero()) throw UnsupportedArcCenter("arc centered at " + f.center.str());
    }
}

/// Polar body. A segment on the line <n, x> = h becomes the vertex n/h, a corner p with
/// normals a, b becomes the segment [a/<a,p>, b/<b,p>], and an arc of radius r about the
/// origin becomes the arc of radius 1/r through the scaled endpoints.
inline PlanarBody polar_planar(const PlanarBody& b) {
    require_polar_hypotheses(b);
    std::vector<Feature> out;
    for (std::size_t j = 0; j < b.size(); ++j) {
        const RatVec& p = b.junction(j);
        if (b.is_corner(j)) {
            const RatVec a = b.junction_in_normal(j), c = b.junction_out_normal(j);
            out.push_back(Feature::segment(a / dot(a, p), c / dot(c, p)));
        }
        const Feature& f = b.feature(j);
        if (f.is_arc()) {
            const Rational inv = 1 / f.radius_sq;
            out.push_back(Feature::arc(RatVec(2), inv, f.from * inv, f.to * inv));
        }
    }
    return PlanarBody::closed_body(std::move(out));
}

/// Equal boundaries up to the choice of the starting feature.
inline bool equal_up_to_rotation(const PlanarBody& a, const PlanarBody& b) {
    const std::size_t m = a.size();
    if (b.size() != m) return false;
    for (std::size_t s = 0; s < m; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            ok = a.feature(i) == b.feature((i + s) % m) && a.junction_closed(i) == b.junction_closed((i + s) % m);
        }
        if (ok) return true;
    }
    return false;
}

/// pos of a face of a body with the origin in its interior.
inline Cone2 pos_of_face(const PlanarBody& b, const FaceDescriptor& f) {
    switch (f.tag) {
        case FaceTag::Empty: return Cone2::zero();
        case FaceTag::Whole: return Cone2::plane();
        case FaceTag::Vertex: return Cone2::ray(b.junction(f.index));
        case FaceTag::Edge: return Cone2::sector(b.feature(f.index).from, b.feature(f.index).to);
        case FaceTag::ArcPoint: return Cone2::ray(f.dir);
    }
    return Cone2::zero();
}

struct PosReport {
    bool pass = true;
    std::size_t checked = 0;
    lattice::IsoReport iso;
    std::vector<std::string> notes;
};

/// pos maps the special faces of the polar body isotonically onto touching cones of b.
inline PosReport polar_pos_check(const PlanarBody& b) {
    const PlanarBody q = polar_planar(b);
    const FaceLattice fq = special_face_lattice(q);
    PosReport r;
    std::vector<PolyCone> cones;
    for (const auto& g : fq.elements()) {
        const Cone2 c = pos_of_face(q, g);
        cones.push_back(c.to_polycone());
        if (g.tag == FaceTag::Empty || g.tag == FaceTag::Whole) continue;
        ++r.checked;
        const Cone2 t = touching_cone(b, c.ri_vector()).cone;
        if (t != c) {
            r.pass = false;
            r.notes.push_back("pos " + g.str() + " = " + c.str() + " but T = " + t.str());
        }
    }
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    try {
        const ConeLattice lt = ConeLattice::build(cones, [](const PolyCone& x, const PolyCone& y) {
            return exactgeom::is_subcone(x, y);
        });
        r.iso = lattice::verify_isomorphism(lattice::make_map(
            fq, lt, [&](const FaceDescriptor& g) { return pos_of_face(q, g).to_polycone(); }, lattice::Direction::Isotone));
        if (!r.iso.pass()) {
            r.pass = false;
            r.notes.push_back("pos map: " + r.iso.summary());
        }
    } catch (const NotALattice& e) {
        r.pass = false;
        r.notes.push_back(e.what());
    }
    return r;
}

}  // namespace facelat::planar
