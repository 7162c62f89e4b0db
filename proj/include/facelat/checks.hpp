#pragma once

// Check suites over bodies, with a machine readable report. A verdict is pass, fail or
// skip; skips record a missing hypothesis and never affect the exit code.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "facelat/bodyio.hpp"
#include "facelat/planar.hpp"
#include "facelat/polytope.hpp"

namespace facelat::checks {

using json = nlohmann::json;
using exactgeom::RatVec;
using planar::PlanarBody;
using polytope::Polytope;

enum class Status { Pass, Fail, Skip };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skip: return "skip";
    }
    return "?";
}

struct Verdict {
    std::string id;
    Status status = Status::Pass;
    std::string detail;
};

struct CheckReport {
    std::string suite;
    std::string fixture;
    std::vector<Verdict> verdicts;
    std::map<std::string, long long> counts;
    std::map<std::string, double> metrics;  ///< floating point measurements (numeric suites)

    void add(std::string id, Status s, std::string detail) { verdicts.push_back({std::move(id), s, std::move(detail)}); }
    void add(std::string id, bool ok, std::string detail) {
        add(std::move(id), ok ? Status::Pass : Status::Fail, std::move(detail));
    }

    bool passed() const {
        return std::none_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.status == Status::Fail; });
    }
    int exit_code() const { return passed() ? 0 : 1; }
    const Verdict* find(const std::string& id) const {
        for (const auto& v : verdicts) {
            if (v.id == id) return &v;
        }
        return nullptr;
    }

    json to_json() const {
        std::vector<Verdict> sorted = verdicts;
        std::stable_sort(sorted.begin(), sorted.end(), [](const Verdict& a, const Verdict& b) { return a.id < b.id; });
        json vs = json::array();
        for (const auto& v : sorted) vs.push_back({{"id", v.id}, {"status", to_string(v.status)}, {"detail", v.detail}});
        json j{{"suite", suite}, {"fixture", fixture}, {"verdicts", vs}, {"counts", counts}, {"pass", passed()}};
        if (!metrics.empty()) j["metrics"] = metrics;
        return j;
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"antitone", "meets", "lift", "sharp", "touching",
                                                "coatoms",  "polar", "partition", "2d"};
    return names;
}

/// n rational unit-circle directions close to the angles 360 k / n degrees: the point
/// ((1 - t^2), 2t) with t a rational approximation of tan(theta / 2), and (-1, 0) at 180.
inline std::vector<RatVec> rational_directions(std::size_t n) {
    std::vector<RatVec> out;
    for (std::size_t k = 0; k < n; ++k) {
        const double theta = 2 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        if (std::abs(theta - M_PI) < 1e-12) {
            out.push_back(RatVec{-1, 0});
            continue;
        }
        const Rational t = Rational(std::lround(std::tan(theta / 2) * 1000)) / 1000;
        out.push_back(RatVec{1 - t * t, 2 * t});
    }
    return out;
}

/// Integer directions with entries in [-k, k], zero excluded.
inline std::vector<RatVec> grid_directions(std::size_t dim, int k) {
    std::vector<RatVec> out;
    RatVec v(dim);
    std::vector<int> c(dim, -k);
    while (true) {
        bool zero = true;
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = c[i];
            zero = zero && c[i] == 0;
        }
        if (!zero) out.push_back(v);
        std::size_t i = 0;
        while (i < dim && c[i] == k) c[i++] = -k;
        if (i == dim) break;
        ++c[i];
    }
    return out;
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

// ---------------------------------------------------------------------------
// Polytopes.

namespace detail {

using namespace polytope;

inline void polytope_antitone(const Polytope& p, CheckReport& r) {
    if (p.num_vertices() == 1) {
        r.add("antitone.normal_cones", Status::Skip, "excluded by hypothesis: the body is a single point");
        return;
    }
    const FaceLattice fe = exposed_face_lattice(p);
    const FaceLattice fa = face_lattice(p);
    const ConeLattice ln = normal_cone_lattice(p);
    const ConeLattice lt = touching_cone_lattice(p);
    r.counts["faces"] = static_cast<long long>(fa.size());
    r.counts["exposed_faces"] = static_cast<long long>(fe.size());
    r.counts["normal_cones"] = static_cast<long long>(ln.size());
    r.counts["touching_cones"] = static_cast<long long>(lt.size());
    auto nc = [&](const PolyFace& f) { return normal_cone(p, f); };
    const auto iso = lattice::verify_isomorphism(lattice::make_map(fe, ln, nc, lattice::Direction::Antitone));
    r.add("antitone.normal_cones", iso.pass(), "F -> N(P,F) from exposed faces onto normal cones: " + iso.summary());
    // The classical polytope facts F = F_perp and T = N, asserted as invariants.
    r.add("antitone.all_faces_exposed", fa.size() == fe.size(),
          "every face of a polytope is exposed (classical fact): " + std::to_string(fa.size()) + " faces, " +
              std::to_string(fe.size()) + " exposed");
    r.add("antitone.touching_are_normal", lt.size() == ln.size(),
          "every touching cone of a polytope is a normal cone (classical fact): " + std::to_string(lt.size()) +
              " touching, " + std::to_string(ln.size()) + " normal");
}

inline void polytope_meets(const Polytope& p, CheckReport& r) {
    const FaceLattice fe = exposed_face_lattice(p);
    std::size_t checked = 0, bad = 0;
    for (std::size_t i = 0; i < fe.size(); ++i) {
        for (std::size_t j = 0; j < fe.size(); ++j) {
            if (fe[i].empty() || fe[j].empty()) continue;
            const RatVec u = exactgeom::ri_point(normal_cone(p, fe[i]));
            const RatVec v = exactgeom::ri_point(normal_cone(p, fe[j]));
            const ExposedMeet m = exposed_meet(p, {u, v});
            ++checked;
            if (m.face != fe[fe.meet(i, j)] || !m.witness_ok) ++bad;
        }
    }
    r.counts["meet_pairs"] = static_cast<long long>(checked);
    r.add("meets.exposed_intersections", bad == 0,
          "F_perp(u) and F_perp(v) intersect in the lattice meet, exposed by a direction in ri conv{u, v}; " +
              std::to_string(bad) + " of " + std::to_string(checked) + " pairs fail");
}

inline void polytope_lift(const Polytope& p, CheckReport& r) {
    const std::size_t n = p.ambient_dim();
    if (n < 2) {
        r.add("lift.lattices", Status::Skip, "needs ambient dimension at least 2");
        return;
    }
    std::size_t subspaces = 0, lattice_bad = 0, cyl_checked = 0, cyl_bad = 0;
    std::vector<std::string> notes;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        exactgeom::Matrix basis;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                RatVec e(n);
                e[i] = 1;
                basis.push_back(e);
            }
        }
        const auto v = exactgeom::LinearSubspace::span(basis, n);
        ++subspaces;
        const LiftReport lr = lifted_face_lattices(p, v);
        if (!lr.pass()) {
            ++lattice_bad;
            if (!lr.notes.empty()) notes.push_back(lr.notes.front());
        }
        for (const auto& a : p.vertices()) {
            ++cyl_checked;
            if (!cylinder_normal_check(p, v, a).equal()) ++cyl_bad;
        }
    }
    r.counts["lift_subspaces"] = static_cast<long long>(subspaces);
    r.add("lift.lattices", lattice_bad == 0,
          "lifts from every coordinate subspace form isotone lattice isomorphisms and are the lift-invariant faces" +
              (notes.empty() ? std::string() : ": " + join(notes, "; ")));
    r.add("lift.cylinder_normal", cyl_bad == 0,
          "N(pi_V P, pi_V a) = (N(P,a) cap V) + V^perp at every vertex; " + std::to_string(cyl_bad) + " of " +
              std::to_string(cyl_checked) + " fail");
}

inline std::vector<RatVec> probe_directions(const Polytope& p) {
    std::vector<RatVec> dirs;
    for (const auto& c : touching_cone_lattice(p).elements()) {
        const RatVec u = exactgeom::ri_point(c);
        if (!u.is_zero()) dirs.push_back(u);
    }
    return dirs;
}

inline void polytope_sharp(const Polytope& p, CheckReport& r) {
    std::size_t bad_n = 0, bad_x = 0;
    const auto dirs = probe_directions(p);
    for (const auto& u : dirs) bad_n += !is_sharp_normal(p, u);
    const auto fs = faces(p);
    for (const auto& f : fs) {
        if (!f.empty()) bad_x += !is_sharp_exposed(p, exactgeom::centroid(face_points(p, f)));
    }
    r.add("sharp.normal", bad_n == 0,
          "every nonzero direction is sharp normal (probed in the relative interior of every touching cone); " +
              std::to_string(bad_n) + " of " + std::to_string(dirs.size()) + " fail");
    r.add("sharp.exposed", bad_x == 0,
          "every point is sharp exposed (probed at the centroid of every face); " + std::to_string(bad_x) + " fail");
}

inline void polytope_touching(const Polytope& p, CheckReport& r) {
    const ConeLattice lt = touching_cone_lattice(p);
    std::size_t bad = 0;
    const auto dirs = grid_directions(p.ambient_dim(), 2);
    for (const auto& u : dirs) {
        const PolyCone t = touching_cone_at(p, u);
        if (!exactgeom::ri_contains(t, u) || !lt.index_of(t)) ++bad;
    }
    r.counts["touching_cones"] = static_cast<long long>(lt.size());
    r.add("touching.defined", bad == 0,
          "T(P,u) is a touching cone with u in its relative interior; " + std::to_string(bad) + " of " +
              std::to_string(dirs.size()) + " directions fail");
}

inline void polytope_coatoms(const Polytope& p, CheckReport& r) {
    if (p.num_vertices() == 1) {
        r.add("coatoms.faces", Status::Skip, "excluded by hypothesis: the body is a single point");
        return;
    }
    const auto ctx = DecompositionContext::build(p);
    std::size_t n_faces = 0, bad_faces = 0, saturated = 0, n_cones = 0, bad_cones = 0, bad_mink = 0, bad_ncoat = 0;
    for (std::size_t i = 0; i < ctx.exposed.size(); ++i) {
        if (i == ctx.exposed.bottom() || i == ctx.exposed.top()) continue;
        ++n_faces;
        const Decomposition d = coatom_decomposition(ctx, ctx.exposed[i]);
        if (!d.found) ++bad_faces;
        if (d.found && d.parts.size() == d.bound) ++saturated;
        if (!minkowski_atom_check(ctx, ctx.exposed[i]).found) ++bad_mink;
    }
    for (std::size_t i = 0; i < ctx.normal.size(); ++i) {
        if (i == ctx.normal.bottom() || i == ctx.normal.top()) continue;
        ++n_cones;
        if (!atom_decomposition(ctx, ctx.normal[i]).found) ++bad_cones;
        if (!normal_coatom_decomposition(ctx, ctx.normal[i]).found) ++bad_ncoat;
    }
    r.counts["coatom_bound_saturated"] = static_cast<long long>(saturated);
    r.add("coatoms.faces", bad_faces == 0,
          "every proper exposed face is an intersection of at most dim N - dim lin(P)^perp coatoms; " +
              std::to_string(bad_faces) + " of " + std::to_string(n_faces) + " fail");
    r.add("coatoms.normal_atoms", bad_cones == 0,
          "every proper normal cone is a join of at most dim N - dim lin(P)^perp atoms; " + std::to_string(bad_cones) +
              " of " + std::to_string(n_cones) + " fail");
    r.add("coatoms.minkowski", bad_mink == 0,
          "every proper exposed face is a join of at most dim F + 1 atoms; " + std::to_string(bad_mink) + " fail");
    r.add("coatoms.normal_coatoms", bad_ncoat == 0,
          "every proper normal cone is an intersection of at most dim F + 1 coatoms; " + std::to_string(bad_ncoat) +
              " fail");
}

inline void polytope_polar(const Polytope& p, CheckReport& r) {
    try {
        require_origin_interior(p);
    } catch (const OriginNotInterior&) {
        r.add("polar.pos", Status::Skip, "the origin is not an interior point");
        return;
    }
    const PosIsoReport pr = pos_iso_check(p);
    r.add("polar.pos", pr.pass(),
          "pos maps exposed faces of the polar onto normal cones and all faces onto touching cones: " +
              pr.exposed_to_normal.summary() + " / " + pr.faces_to_touching.summary());
    r.add("polar.involution", polar(polar(p)) == p, "polar(polar(P)) = P");
}

inline void polytope_partition(const Polytope& p, CheckReport& r) {
    const auto dirs = p.ambient_dim() == 2 ? rational_directions(360) : grid_directions(p.ambient_dim(), 2);
    const ConeLattice lt = touching_cone_lattice(p);
    std::size_t bad = 0;
    for (const auto& u : dirs) {
        std::size_t hits = 0;
        for (const auto& c : lt.elements()) hits += !c.is_whole_space() && exactgeom::ri_contains(c, u);
        if (hits != 1) ++bad;
    }
    r.counts["partition_directions"] = static_cast<long long>(dirs.size());
    r.add("partition.unique_cone", bad == 0,
          "every sampled direction lies in the relative interior of exactly one touching cone other than "
          "the whole space; " + std::to_string(bad) + " fail");
}

}  // namespace detail

inline void run_suite(const Polytope& p, const std::string& suite, CheckReport& r) {
    if (suite == "antitone") detail::polytope_antitone(p, r);
    else if (suite == "meets") detail::polytope_meets(p, r);
    else if (suite == "lift") detail::polytope_lift(p, r);
    else if (suite == "sharp") detail::polytope_sharp(p, r);
    else if (suite == "touching") detail::polytope_touching(p, r);
    else if (suite == "coatoms") detail::polytope_coatoms(p, r);
    else if (suite == "polar") detail::polytope_polar(p, r);
    else if (suite == "partition") detail::polytope_partition(p, r);
    else if (suite == "2d") r.add("2d.rules", Status::Skip, "the two-dimensional rules apply to planar bodies");
    else throw ParseError("unknown suite '" + suite + "'");
}

// ---------------------------------------------------------------------------
// Planar bodies.

namespace detail {

using namespace planar;

inline std::vector<std::string> strs(const std::vector<FaceDescriptor>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) out.push_back(f.str());
    return out;
}
inline std::vector<std::string> strs(const std::vector<Cone2>& cs) {
    std::vector<std::string> out;
    for (const auto& c : cs) out.push_back(c.str());
    return out;
}

inline void planar_counts(const PlanarBody& b, CheckReport& r) {
    r.counts["special_faces"] = static_cast<long long>(special_faces(b).size());
    r.counts["exposed_special_faces"] = static_cast<long long>(special_exposed_lattice(b).size());
    r.counts["non_exposed_faces"] = static_cast<long long>(non_exposed_faces(b).size());
    r.counts["touching_not_normal"] = static_cast<long long>(touching_not_normal(b).size());
}

inline void planar_antitone(const PlanarBody& b, CheckReport& r) {
    const auto iso = special_antitone_check(b);
    r.add("antitone.normal_cones", iso.pass(),
          "F -> N(B,F) on the exposed special faces is an antitone isomorphism: " + iso.summary());
}

inline void planar_meets(const PlanarBody& b, CheckReport& r) {
    const planar::FaceLattice le = special_exposed_lattice(b);
    std::size_t checked = 0, bad = 0;
    std::vector<std::string> notes;
    for (std::size_t i = 0; i < le.size(); ++i) {
        for (std::size_t j = 0; j < le.size(); ++j) {
            const FaceDescriptor m = le[le.meet(i, j)];
            if (le[i].tag == FaceTag::Empty || le[j].tag == FaceTag::Empty || m.tag == FaceTag::Empty) continue;
            const RatVec u = normal_cone(b, le[i]).ri_vector(), v = normal_cone(b, le[j]).ri_vector();
            if ((u + v).is_zero()) continue;
            ++checked;
            if (exposed_face(b, u + v) != m) {
                ++bad;
                notes.push_back(le[i].str() + " meet " + le[j].str());
            }
        }
    }
    r.counts["meet_pairs"] = static_cast<long long>(checked);
    r.add("meets.exposed_intersections", bad == 0,
          "a nonempty meet of exposed faces is exposed by the sum of relative interior normals; " +
              std::to_string(bad) + " of " + std::to_string(checked) + " pairs fail" +
              (notes.empty() ? std::string() : ": " + join(notes, "; ")));
}

inline void planar_sharp(const PlanarBody& b, CheckReport& r) {
    std::size_t checked = 0, bad = 0;
    for (const auto& u : rational_directions(72)) {
        if (exposed_face(b, u).tag == FaceTag::Empty) continue;
        ++checked;
        const TouchingCone t = touching_cone(b, u);
        if (t.is_normal != is_normal_cone(b, t.cone)) ++bad;
    }
    r.add("sharp.routes_agree", bad == 0,
          "the sharp normal test and direct normal cone enumeration agree on T(B,u); " + std::to_string(bad) + " of " +
              std::to_string(checked) + " fail");
    const auto ne = non_exposed_faces(b);
    std::size_t bad_sup = 0;
    for (const auto& f : ne) {
        if (normal_cone(b, sup_exposed(b, f)) != normal_cone(b, f)) ++bad_sup;
    }
    r.add("sharp.non_exposed_normal_cones", bad_sup == 0,
          "a non-exposed face shares its normal cone with the smallest exposed face containing it; non-exposed: [" +
              join(strs(ne)) + "]");
    const auto tn = touching_not_normal(b);
    r.counts["touching_not_normal"] = static_cast<long long>(tn.size());
    r.counts["non_exposed_faces"] = static_cast<long long>(ne.size());
    r.add("sharp.touching_not_normal", Status::Pass, "touching cones that are not normal cones: [" + join(strs(tn)) + "]");
}

inline void planar_touching(const PlanarBody& b, CheckReport& r) {
    std::size_t checked = 0, bad = 0, empty = 0;
    for (const auto& u : rational_directions(72)) {
        if (exposed_face(b, u).tag == FaceTag::Empty) {
            ++empty;
            continue;
        }
        ++checked;
        const TouchingCone t = touching_cone(b, u);
        const auto cands = touching_candidates(b, u);
        if (!t.cone.ri_contains(u) || std::find(cands.begin(), cands.end(), t.cone) == cands.end()) ++bad;
    }
    r.counts["directions_without_support_point"] = static_cast<long long>(empty);
    r.add("touching.defined", bad == 0,
          "T(B,u) is a face of a normal cone with u in its relative interior; " + std::to_string(bad) + " of " +
              std::to_string(checked) + " fail");
    if (b.is_polygon()) {
        const auto s = finite_cone_summary(b);
        r.counts["proper_normal_cones"] = static_cast<long long>(s.proper_normal.size());
        r.counts["proper_touching_cones"] = static_cast<long long>(s.proper_touching.size());
    }
}

inline void planar_coatoms(const PlanarBody& b, CheckReport& r) {
    const planar::FaceLattice le = special_exposed_lattice(b);
    for (std::size_t i = 0; i < le.size(); ++i) {
        if (i == le.bottom() || i == le.top()) continue;
        const FaceDescriptor& f = le[i];
        const CoatomReport c = coatom_check_planar(b, f);
        const std::string what = c.is_coatom_intersection
                                     ? "an intersection of coatoms [" + join(strs(c.coatoms)) + "]"
                                     : "not an intersection of coatoms";
        if (c.hypothesis_holds) {
            r.add("coatoms." + f.str(), c.consistent(),
                  f.str() + " is " + what + " (bound " + std::to_string(c.bound) + ")");
        } else {
            r.add("coatoms." + f.str(), Status::Skip,
                  f.str() + " is " + what + "; hypothesis fails: touching cones [" + join(strs(c.non_normal_touching)) +
                      "] inside N(B,F) are not normal cones");
        }
        if (f.tag == FaceTag::Edge) {
            const AtomReport a = minkowski_atom_check_planar(b, f);
            const std::string res = a.found ? "a join of atoms [" + join(strs(a.atoms)) + "]" : "not a join of at most " +
                                                                                                  std::to_string(a.bound) +
                                                                                                  " atoms";
            if (!b.is_closed()) {
                r.add("minkowski." + f.str(), Status::Skip, f.str() + " is " + res + "; the body is not closed");
            } else if (!a.hypothesis_holds) {
                r.add("minkowski." + f.str(), Status::Skip, f.str() + " is " + res + "; a face inside is not exposed");
            } else {
                r.add("minkowski." + f.str(), a.found, f.str() + " is " + res);
            }
        }
    }
}

inline void planar_polar(const PlanarBody& b, CheckReport& r) {
    try {
        require_polar_hypotheses(b);
    } catch (const Error& e) {
        r.add("polar.pos", Status::Skip, e.what());
        return;
    }
    const PosReport pr = polar_pos_check(b);
    r.add("polar.pos", pr.pass,
          "pos maps the special faces of the polar body onto touching cones, exposed ones onto normal cones" +
              (pr.notes.empty() ? std::string() : ": " + join(pr.notes, "; ")));
    r.add("polar.involution", equal_up_to_rotation(polar_planar(polar_planar(b)), b), "polar(polar(B)) = B");
}

inline void planar_partition(const PlanarBody& b, CheckReport& r) {
    std::vector<RatVec> dirs;
    std::size_t excluded = 0;
    for (const auto& u : rational_directions(360)) {
        if (exposed_face(b, u).tag == FaceTag::Empty) ++excluded;
        else dirs.push_back(u);
    }
    const PartitionReport pr = partition_check_planar(b, dirs);
    r.counts["partition_directions"] = static_cast<long long>(pr.checked);
    r.counts["partition_excluded"] = static_cast<long long>(excluded);
    r.add("partition.unique_cone", pr.pass,
          "every sampled direction lies in the relative interior of exactly one touching cone" +
              (excluded ? " (" + std::to_string(excluded) + " directions without a support point excluded)" : "") +
              (pr.notes.empty() ? std::string() : ": " + join(pr.notes, "; ")));
}

inline void planar_2d(const PlanarBody& b, CheckReport& r) {
    const auto ne = non_exposed_faces(b);
    try {
        const RuleReport rr = check_2d_nonexposed_rule(b);
        r.add("2d.non_exposed_rule", rr.pass,
              "a face is non-exposed iff it is the endpoint of a unique one-dimensional face; non-exposed: [" +
                  join(strs(ne)) + "]" + (rr.notes.empty() ? std::string() : "; " + join(rr.notes, "; ")));
    } catch (const HypothesisFailed& e) {
        r.add("2d.non_exposed_rule", Status::Skip, std::string(e.what()) + "; non-exposed: [" + join(strs(ne)) + "]");
    }
    try {
        const RuleReport rr = check_2d_smoothness(b);
        r.add("2d.smoothness", rr.pass,
              "non-smooth boundary points are exposed" + (rr.notes.empty() ? std::string() : ": " + join(rr.notes, "; ")));
    } catch (const HypothesisFailed& e) {
        r.add("2d.smoothness", Status::Skip, e.what());
    }
    r.counts["non_exposed_faces"] = static_cast<long long>(ne.size());
}

}  // namespace detail

inline void run_suite(const PlanarBody& b, const std::string& suite, CheckReport& r) {
    if (suite == "antitone") detail::planar_antitone(b, r);
    else if (suite == "meets") detail::planar_meets(b, r);
    else if (suite == "lift") r.add("lift.lattices", Status::Skip, "lifts are implemented for polytopes");
    else if (suite == "sharp") detail::planar_sharp(b, r);
    else if (suite == "touching") detail::planar_touching(b, r);
    else if (suite == "coatoms") detail::planar_coatoms(b, r);
    else if (suite == "polar") detail::planar_polar(b, r);
    else if (suite == "partition") detail::planar_partition(b, r);
    else if (suite == "2d") detail::planar_2d(b, r);
    else throw ParseError("unknown suite '" + suite + "'");
}

inline CheckReport run_check(const bodyio::Body& body, const std::string& fixture, const std::string& suite) {
    CheckReport r;
    r.suite = suite;
    r.fixture = fixture;
    const std::vector<std::string> suites = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    for (const auto& s : suites) {
        std::visit([&](const auto& b) { run_suite(b, s, r); }, body);
    }
    if (const auto* pb = std::get_if<PlanarBody>(&body)) detail::planar_counts(*pb, r);
    return r;
}

}  // namespace facelat::checks
