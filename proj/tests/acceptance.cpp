// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.
// Expected values come from the brute-force oracles in oracles.hpp and planar_oracle.hpp
// wherever a second route exists.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "facelat/checks.hpp"
#include "facelat/fixtures.hpp"
#include "facelat/planar.hpp"
#include "facelat/polytope.hpp"
#include "facelat/statespace.hpp"
#include "oracles.hpp"
#include "planar_oracle.hpp"

using namespace facelat;
using exactgeom::LinearSubspace;
using exactgeom::RatVec;
using exactgeom::PolyCone;
using planar::Cone2;
using planar::ConeTag;
using planar::FaceDescriptor;
using planar::FaceTag;
using planar::PlanarBody;
using polytope::Polytope;
using polytope::PolyFace;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failed expectations; the detail lists the first few.
class Expect {
public:
    void operator()(bool ok, const std::string& what) {
        if (ok) return;
        pass_ = false;
        if (failures_.size() < 4) failures_.push_back(what);
    }
    Outcome done(const std::string& summary) const {
        if (pass_) return {true, summary};
        std::string s;
        for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
        return {false, s};
    }

private:
    bool pass_ = true;
    std::vector<std::string> failures_;
};

RatVec v2(long x, long y) { return RatVec{Rational(x), Rational(y)}; }

LinearSubspace coordinate_span(std::size_t n, std::vector<std::size_t> axes) {
    exactgeom::Matrix m;
    for (auto i : axes) m.push_back(RatVec::unit(n, i));
    return LinearSubspace::span(m, n);
}

std::vector<LinearSubspace> coordinate_subspaces(std::size_t n) {
    std::vector<LinearSubspace> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(coordinate_span(n, {i}));
    for (std::size_t i = 0; i < n && n > 2; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) out.push_back(coordinate_span(n, {i, j}));
    }
    return out;
}

PolyFace face_of(const Polytope& p, const std::vector<RatVec>& pts) {
    std::vector<std::size_t> idx;
    for (const auto& x : pts) {
        for (std::size_t i = 0; i < p.num_vertices(); ++i) {
            if (p.vertex(i) == x) idx.push_back(i);
        }
    }
    return polytope::make_face(p, idx);
}

std::vector<std::pair<std::string, Polytope>> polytope_fixtures() {
    std::vector<std::pair<std::string, Polytope>> out;
    for (const auto& [name, make] : fixtures::polytope_registry()) out.emplace_back(name, make());
    return out;
}

// ---------------------------------------------------------------------------

Outcome antitone() {
    Expect expect;
    std::string sizes;
    for (const auto& name : {"square", "cube", "triangle", "segment"}) {
        const Polytope p = fixtures::polytope_registry().at(name)();
        const auto fe = polytope::exposed_face_lattice(p);
        const auto ln = polytope::normal_cone_lattice(p);
        const auto iso = lattice::verify_isomorphism(lattice::make_map(
            fe, ln, [&](const PolyFace& f) { return polytope::normal_cone(p, f); }, lattice::Direction::Antitone));
        expect(iso.bijective(), std::string(name) + ": not bijective");
        expect(iso.preserves_order && iso.reflects_order, std::string(name) + ": order not reversed");
        sizes += std::string(sizes.empty() ? "" : ", ") + name + " " + std::to_string(fe.size());
    }
    return expect.done("F -> N(C,F) is an antitone isomorphism on " + sizes + " element lattices");
}

Outcome lattice_sizes() {
    Expect expect;
    const std::vector<std::pair<Polytope, std::size_t>> cases{{fixtures::square(), 10}, {fixtures::cube(), 28}};
    std::string s;
    for (const auto& [p, expected] : cases) {
        const std::size_t oracle_count = oracle::face_count(p);
        const std::size_t f = polytope::face_lattice(p).size(), e = polytope::exposed_face_lattice(p).size();
        const std::size_t n = polytope::normal_cone_lattice(p).size(), t = polytope::touching_cone_lattice(p).size();
        expect(oracle_count == expected, "oracle counts " + std::to_string(oracle_count));
        for (std::size_t x : {f, e, n, t}) expect(x == oracle_count, "lattice size " + std::to_string(x));
        s += (s.empty() ? "" : "; ") + std::to_string(f) + "/" + std::to_string(e) + "/" + std::to_string(n) + "/" +
             std::to_string(t) + " (oracle " + std::to_string(oracle_count) + ")";
    }
    return expect.done("faces/exposed/normal/touching: square " + s.substr(0, s.find(';')) + ", cube" +
                       s.substr(s.find(';') + 1));
}

Outcome quarter_disk() {
    Expect expect;
    const PlanarBody b = fixtures::quarter_disk();
    const auto tn = planar::touching_not_normal(b);
    std::vector<Cone2> expected{Cone2::ray(v2(0, 1)), Cone2::ray(v2(1, 0))};
    std::vector<Cone2> got = tn;
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    expect(got == expected, "touching but not normal: " + std::to_string(tn.size()) + " cones");
    expect(planar::non_exposed_faces(b).empty(), "non-exposed faces present");
    const Cone2 at_a = planar::normal_cone_at_point(b, v2(0, 0));
    expect(at_a == Cone2::sector(v2(-1, 0), v2(0, -1)), "N(C,a) = " + at_a.str());
    // Second route: (1,0) and (0,1) expose only the corners, whose normal cones are wider.
    for (const auto& c : expected) {
        expect(!planar::is_sharp_normal(b, c.ri_vector()), c.str() + " is sharp normal");
    }
    return expect.done("touching but not normal: Ray(1,0), Ray(0,1); no non-exposed faces; N(C,a) = " + at_a.str());
}

Outcome stadium() {
    Expect expect;
    const PlanarBody b = fixtures::stadium();
    std::vector<RatVec> ends;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!b.feature(i).is_arc()) {
            ends.push_back(b.feature(i).from);
            ends.push_back(b.feature(i).to);
        }
    }
    std::vector<RatVec> ne;
    for (const auto& f : planar::non_exposed_faces(b)) {
        expect(f.tag == FaceTag::Vertex, f.str() + " is not a point");
        if (f.point) ne.push_back(*f.point);
    }
    std::sort(ends.begin(), ends.end());
    std::sort(ne.begin(), ne.end());
    expect(ne == ends, "non-exposed points differ from the flat edge endpoints");
    // Second route: an endpoint is exposed iff some direction exposes exactly that point.
    for (const auto& x : ends) {
        const FaceDescriptor f = planar::face_at(b, x);
        expect(planar::exposed_face(b, planar::normal_cone(b, f).ri_vector()) != f, x.str() + " is exposed");
    }
    expect(planar::touching_not_normal(b).empty(), "a touching cone is not normal");
    const auto rule = planar::check_2d_nonexposed_rule(b);
    expect(rule.pass, "two-dimensional rule fails");
    return expect.done(std::to_string(ne.size()) + " non-exposed flat edge endpoints; T = N; rule holds on " +
                       std::to_string(rule.checked) + " faces");
}

Outcome lens() {
    Expect expect;
    const PlanarBody b = fixtures::lens();
    const auto tn = planar::touching_not_normal(b);
    expect(!tn.empty(), "every touching cone is normal");
    expect(planar::non_exposed_faces(b).empty(), "non-exposed faces present");
    // Arc points from sampled directions join the special faces, so the coatom test covers them.
    std::vector<FaceDescriptor> extra;
    for (const auto& u : checks::rational_directions(72)) {
        const FaceDescriptor f = planar::exposed_face(b, u);
        if (f.tag == FaceTag::ArcPoint && std::find(extra.begin(), extra.end(), f) == extra.end()) extra.push_back(f);
    }
    const auto base = planar::special_faces(b);
    extra.erase(std::remove_if(extra.begin(), extra.end(),
                               [&](const FaceDescriptor& f) { return std::count(base.begin(), base.end(), f) > 0; }),
                extra.end());
    const auto E = planar::special_exposed_lattice(b, extra);
    const auto co = E.coatoms();
    std::size_t proper = 0;
    for (std::size_t i = 0; i < E.size(); ++i) {
        if (i == E.bottom() || i == E.top()) continue;
        ++proper;
        expect(std::count(co.begin(), co.end(), i) == 1, E[i].str() + " is not a coatom");
    }
    return expect.done(std::to_string(tn.size()) + " touching cones are not normal; all " + std::to_string(proper) +
                       " proper faces checked are coatoms");
}

Outcome cut_triangle() {
    Expect expect;
    const PlanarBody left = fixtures::cut_triangle(), right = fixtures::cut_triangle_apex();
    const auto sl = planar::finite_cone_summary(left), sr = planar::finite_cone_summary(right);
    expect(sl.proper_touching.size() == 3, "left has " + std::to_string(sl.proper_touching.size()) + " touching cones");
    expect(sl.proper_normal == sl.proper_touching, "left has a non-normal touching cone");
    const auto El = planar::special_exposed_lattice(left);
    for (std::size_t i = 0; i < El.size(); ++i) {
        if (i == El.bottom() || i == El.top()) continue;
        expect(planar::coatom_check_planar(left, El[i]).is_coatom_intersection, El[i].str() + " not coatom meet");
    }
    const RatVec top = v2(1, 2);
    expect(!planar::coatom_check_planar(right, planar::face_at(right, top)).is_coatom_intersection,
           "right top vertex is an intersection of coatoms");
    const long dn = static_cast<long>(sr.proper_normal.size()) - static_cast<long>(sl.proper_normal.size());
    const long dt = static_cast<long>(sr.proper_touching.size()) - static_cast<long>(sl.proper_touching.size());
    expect(dn == 1 && dt == 2, "deltas normal " + std::to_string(dn) + ", touching " + std::to_string(dt));
    // Brute-force route on the same flag encodings.
    const std::vector<RatVec> verts{v2(0, 0), v2(2, 0), v2(1, 2)};
    const oracle::FlaggedPolygon ol{verts, {false, true, false}, {true, true, false}};
    const oracle::FlaggedPolygon orr{verts, {false, true, true}, {true, true, false}};
    expect(oracle::proper_touching_cones(ol).size() == 3, "oracle: left touching count");
    expect(oracle::proper_normal_cones(orr).size() == oracle::proper_normal_cones(ol).size() + 1, "oracle: normal delta");
    expect(oracle::proper_touching_cones(orr).size() == oracle::proper_touching_cones(ol).size() + 2,
           "oracle: touching delta");
    expect(!oracle::point_is_coatom_intersection(orr, top), "oracle: top vertex is a coatom meet");
    return expect.done("left: 3 proper touching cones, all normal, coatom meets; right: +" + std::to_string(dn) +
                       " normal, +" + std::to_string(dt) + " touching, top vertex not an intersection of coatoms");
}

// Smallest number of lattice coatoms meeting in `target`, by exhaustive search.
template <class T>
std::size_t brute_coatom_count(const lattice::FiniteLattice<T>& L, std::size_t target) {
    const auto co = L.coatoms();
    for (std::size_t k = 1; k <= co.size(); ++k) {
        bool hit = false;
        exactgeom::for_each_combination(co.size(), k, [&](const std::vector<std::size_t>& idx) {
            std::size_t m = L.top();
            for (auto i : idx) m = L.meet(m, co[i]);
            hit = m == target;
            return !hit;
        });
        if (hit) return k;
    }
    return 0;
}

Outcome coatom_bounds() {
    Expect expect;
    const Polytope cube = fixtures::cube();
    const auto ctx = polytope::DecompositionContext::build(cube);
    const PolyFace corner = face_of(cube, {RatVec{1, 1, 1}});
    const auto d = polytope::coatom_decomposition(ctx, corner);
    expect(d.found && d.parts.size() == 3 && d.bound == 3,
           "corner: " + std::to_string(d.parts.size()) + " coatoms, bound " + std::to_string(d.bound));
    expect(brute_coatom_count(ctx.exposed, *ctx.exposed.index_of(corner)) == 3, "oracle: corner coatom count");
    const PolyFace facet = face_of(cube, {RatVec{1, -1, -1}, RatVec{1, -1, 1}, RatVec{1, 1, -1}, RatVec{1, 1, 1}});
    const PolyCone n = polytope::normal_cone(cube, facet);
    const auto dn = polytope::normal_coatom_decomposition(ctx, n);
    const std::size_t brute = brute_coatom_count(ctx.normal, *ctx.normal.index_of(n));
    expect(dn.found && dn.parts.size() <= dn.bound, "facet normal exceeds the bound");
    expect(dn.parts.size() == brute, "facet normal: search and oracle disagree");
    const auto atoms = polytope::atom_decomposition(ctx, polytope::normal_cone(cube, corner));
    expect(atoms.found && atoms.parts.size() == 3 && atoms.bound == 3, "corner normal cone atoms");
    return expect.done("cube corner = 3 facets (bound 3, saturated); facet normal = " +
                       std::to_string(dn.parts.size()) + " corner cones (bound " + std::to_string(dn.bound) +
                       ", minimum " + std::to_string(brute) + " by exhaustive search)");
}

Outcome polarity() {
    Expect expect;
    for (const auto& p : {fixtures::square(), fixtures::cube()}) {
        expect(polytope::pos_iso_check(p).pass(), "pos isomorphisms fail in dimension " + std::to_string(p.ambient_dim()));
    }
    const PlanarBody k = fixtures::truncated_disk(false);
    expect(planar::polar_pos_check(k).pass, "truncated disk pos check");
    std::string translated;
    for (const auto& [name, p] : polytope_fixtures()) {
        Polytope q = p;
        try {
            polytope::require_origin_interior(p);
        } catch (const OriginNotInterior&) {
            // Polarity needs 0 in the interior; move the centroid there.
            const RatVec c = exactgeom::centroid(p.vertices());
            std::vector<RatVec> vs;
            for (const auto& v : p.vertices()) vs.push_back(v - c);
            q = Polytope(vs);
            translated += (translated.empty() ? "" : ", ") + name;
        }
        expect(polytope::polar(polytope::polar(q)) == q, name + ": polar is not an involution");
    }
    const PlanarBody kp = planar::polar_planar(k);
    bool has_vertex = false;
    for (std::size_t j = 0; j < kp.size(); ++j) has_vertex = has_vertex || kp.junction(j) == v2(2, 0);
    expect(has_vertex, "polar of the truncated disk lacks the vertex (2,0)");
    expect(planar::equal_up_to_rotation(planar::polar_planar(kp), k), "truncated disk polar is not an involution");
    // Support function oracle: z is in the polar iff h(K, z) <= 1 (compare_support signs 1 - h),
    // and the polar junctions lie on h(K, .) = 1.
    std::size_t deviations = 0, sampled = 0;
    for (int x = -15; x <= 15; ++x) {
        for (int y = -15; y <= 15; ++y) {
            const RatVec z{Rational(x) / 6, Rational(y) / 6};
            ++sampled;
            deviations += planar::in_closure(kp, z) != (planar::compare_support(k, z, 1) >= 0);
        }
    }
    for (std::size_t j = 0; j < kp.size(); ++j) deviations += planar::compare_support(k, kp.junction(j), 1) != 0;
    expect(deviations == 0, std::to_string(deviations) + " support function deviations");
    return expect.done("pos isomorphisms on square, cube, truncated disk; polar involution on all polytope fixtures" +
                       (translated.empty() ? std::string() : " (" + translated + " centered first)") +
                       "; truncated disk polar has vertex (2,0), 0 deviations at " + std::to_string(sampled) +
                       " rational points");
}

Outcome minkowski() {
    Expect expect;
    std::size_t faces = 0;
    for (const auto& p : {fixtures::square(), fixtures::cube()}) {
        const auto ctx = polytope::DecompositionContext::build(p);
        for (std::size_t i = 0; i < ctx.exposed.size(); ++i) {
            if (i == ctx.exposed.bottom() || i == ctx.exposed.top()) continue;
            ++faces;
            const auto d = polytope::minkowski_atom_check(ctx, ctx.exposed[i]);
            expect(d.found && d.parts.size() <= d.bound, "face " + ctx.exposed[i].str() + " needs more atoms");
        }
    }
    const PlanarBody t = fixtures::triangle_minus_vertex();
    std::string failing;
    for (const auto& f : planar::special_exposed_lattice(t).elements()) {
        if (f.tag != FaceTag::Edge) continue;
        const auto a = planar::minkowski_atom_check_planar(t, f);
        if (a.hypothesis_holds && !a.found) failing += (failing.empty() ? "" : ", ") + f.str();
    }
    expect(!failing.empty(), "the bound holds on the triangle with a deleted vertex");
    return expect.done("bound holds on " + std::to_string(faces) +
                       " square and cube faces; fails as expected on the non-closed triangle at " + failing);
}

Outcome lifting() {
    Expect expect;
    const Polytope tri = oracle::triangle();
    const LinearSubspace x = coordinate_span(2, {0});
    const auto r = polytope::lifted_face_lattices(tri, x);
    expect(r.pass(), "lift is not an isotone isomorphism");
    const PolyFace a = face_of(tri, {RatVec{0, 0}}), b = face_of(tri, {RatVec{2, 0}});
    const PolyFace bottom = face_of(tri, {RatVec{0, 0}, RatVec{2, 0}});
    auto in = [](const std::vector<PolyFace>& v, const PolyFace& f) { return std::find(v.begin(), v.end(), f) != v.end(); };
    expect(in(r.lifted, a) && in(r.lifted, b), "corners are not lifted faces");
    expect(!in(r.not_invariant, a) && !in(r.not_invariant, b), "corners are not lift-invariant");
    expect(in(r.not_invariant, bottom) && !in(r.lifted, bottom), "bottom edge is lift-invariant");
    std::size_t checked = 0;
    for (const auto& p : {fixtures::square(), fixtures::cube()}) {
        for (const auto& v : coordinate_subspaces(p.ambient_dim())) {
            for (const auto& vert : p.vertices()) {
                ++checked;
                const auto c = polytope::cylinder_normal_check(p, v, vert);
                expect(c.equal(), c.projected_normal.str() + " vs " + c.cylinder.str());
            }
        }
    }
    return expect.done("triangle over the x-axis: corners lift-invariant, bottom edge not; cylinder identity at " +
                       std::to_string(checked) + " vertex/subspace pairs");
}

Outcome partition() {
    Expect expect;
    const auto dirs = checks::rational_directions(360);
    std::set<std::string> distinct;
    for (const auto& u : dirs) distinct.insert(u.str());
    expect(distinct.size() == 360, "directions are not distinct");
    for (const auto& b : {fixtures::quarter_disk(), fixtures::stadium()}) {
        const auto r = planar::partition_check_planar(b, dirs);
        expect(r.pass && r.checked == 360, r.notes.empty() ? "planar partition" : r.notes.front());
    }
    const Polytope sq = fixtures::square();
    const auto lt = polytope::touching_cone_lattice(sq);
    for (const auto& u : dirs) {
        std::size_t hits = 0;
        for (const auto& c : lt.elements()) hits += !c.is_whole_space() && exactgeom::ri_contains(c, u);
        expect(hits == 1, "square: " + u.str() + " in " + std::to_string(hits) + " relative interiors");
        expect(exactgeom::ri_contains(polytope::touching_cone_at(sq, u), u), "square: T(P,u)");
    }
    return expect.done("360 rational directions each in exactly one relative interior on quarter disk, square, stadium");
}

Outcome state_space() {
    Expect expect;
    const auto start = std::chrono::steady_clock::now();
    std::string s;
    for (const auto& blocks : {std::vector<int>{2}, std::vector<int>{2, 1}}) {
        const auto r = statespace::verify_sharp_properties(statespace::Algebra{blocks}, 1000, 1e-9, 2024);
        expect(r.sharp_normal_violations == 0 && r.sharp_exposed_violations == 0,
               std::to_string(r.sharp_normal_violations + r.sharp_exposed_violations) + " violations");
        expect(r.samples == 1000, "sample count");
        std::ostringstream os;
        os << r.max_violation;
        s += (s.empty() ? "" : ", ") + std::to_string(blocks.size()) + " block(s) max residual " + os.str();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    expect(secs < 10, "runtime " + std::to_string(secs) + " s");
    std::ostringstream os;
    os.precision(3);
    os << secs;
    return expect.done("1000 samples each, 0 violations at tau 1e-9 (" + s + "), " + os.str() + " s");
}

Outcome cone() {
    Expect expect;
    const auto a = statespace::cone_experiment(12);
    const auto b = statespace::cone_experiment(39);
    expect(a.conic == statespace::ConicType::Hyperbolic, "12 degrees: " + statespace::to_string(a.conic));
    expect(b.conic == statespace::ConicType::Elliptic, "39 degrees: " + statespace::to_string(b.conic));
    expect(a.projection.non_exposed_points == 2, "projection non-exposed points: " +
                                                     std::to_string(a.projection.non_exposed_points));
    expect(a.intersection_exposed() && b.intersection_exposed(), "an intersection boundary face is not exposed");
    expect(a.intersection.exposure_checked > 0, "no intersection boundary faces sampled");
    std::ostringstream os;
    os.precision(12);
    os << a.critical_angle_deg;
    return expect.done("12 deg hyperbolic, 39 deg elliptic (numeric); projection has 2 non-exposed tangency points; "
                       "intersections exposed; transition angle " + os.str() + " deg");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"antitone isomorphism", antitone},   {"lattice sizes", lattice_sizes}, {"quarter disk", quarter_disk},
        {"stadium", stadium},                 {"lens", lens},                   {"cut triangle", cut_triangle},
        {"coatom and atom bounds", coatom_bounds}, {"polarity", polarity},      {"Minkowski bound", minkowski},
        {"lifting", lifting},                 {"partition", partition},         {"state space", state_space},
        {"cone experiment", cone}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
