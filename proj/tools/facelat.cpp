// Command line front end: face and cone lattices, polar bodies, check suites and the
// state-space experiments. Exit status: 0 success, 1 a check failed, 2 bad input.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "facelat/bodyio.hpp"
#include "facelat/checks.hpp"
#include "facelat/statespace_checks.hpp"

namespace {

using namespace facelat;
using bodyio::Body;
using planar::Cone2;
using planar::ConeTag;
using planar::FaceDescriptor;
using planar::PlanarBody;
using polytope::Polytope;

constexpr int kInputError = 2;

template <class T>
void print_rows(const lattice::FiniteLattice<T>& L, const std::function<std::string(const T&)>& label,
                const std::function<int(const T&)>& rank, const std::function<std::string(const T&)>& note = {}) {
    for (std::size_t i = 0; i < L.size(); ++i) {
        std::cout << i << '\t' << rank(L[i]) << '\t' << label(L[i]);
        if (note) std::cout << '\t' << note(L[i]);
        std::cout << '\n';
    }
    std::cout << "# " << L.size() << " elements, " << L.hasse_edges().size() << " cover relations\n";
}

template <class T>
void write_dot(const std::string& path, const lattice::FiniteLattice<T>& L,
               const std::function<std::string(const T&)>& label, const std::function<int(const T&)>& rank,
               const std::string& name) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << lattice::to_dot(L, label, rank, name);
}

void polytope_lattice(const Polytope& p, const std::string& kind, const std::string& dot) {
    if (kind == "faces" || kind == "exposed") {
        const polytope::FaceLattice L = kind == "faces" ? polytope::face_lattice(p) : polytope::exposed_face_lattice(p);
        const std::function<std::string(const polytope::PolyFace&)> label = [&](const polytope::PolyFace& f) {
            return polytope::face_label(p, f);
        };
        const std::function<int(const polytope::PolyFace&)> rank = [](const polytope::PolyFace& f) { return f.dim; };
        print_rows(L, label, rank);
        write_dot(dot, L, label, rank, kind);
        return;
    }
    const polytope::ConeLattice L =
        kind == "normal" ? polytope::normal_cone_lattice(p) : polytope::touching_cone_lattice(p);
    const std::function<std::string(const exactgeom::PolyCone&)> label = [](const exactgeom::PolyCone& c) {
        return c.str();
    };
    const std::function<int(const exactgeom::PolyCone&)> rank = [](const exactgeom::PolyCone& c) {
        return static_cast<int>(c.dim());
    };
    print_rows(L, label, rank);
    write_dot(dot, L, label, rank, kind);
}

std::vector<Cone2> unique_cones(std::vector<Cone2> cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

bool has_closed_arc(const PlanarBody& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b.feature(i).is_arc() && b.feature(i).closed) return true;
    }
    return false;
}

// One line describing the cone family of a body with arcs, where the finite rows only
// hold one arc representative.
std::string cone_family_summary(const PlanarBody& b, const std::vector<Cone2>& cones, bool touching) {
    std::size_t sectors = 0, halfplanes = 0, edge_rays = 0;
    std::vector<Cone2> edge_normals;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!b.feature(i).is_arc() && b.feature(i).closed) {
            edge_normals.push_back(planar::normal_cone(b, FaceDescriptor::edge(i)));
        }
    }
    for (const auto& c : cones) {
        sectors += c.tag == ConeTag::Sector;
        halfplanes += c.tag == ConeTag::Halfplane;
        edge_rays += c.tag == ConeTag::Ray && std::count(edge_normals.begin(), edge_normals.end(), c) > 0;
    }
    std::ostringstream os;
    os << "# " << sectors << " sectors";
    if (halfplanes) os << ", " << halfplanes << " half-planes";
    os << ", " << edge_rays << " edge rays";
    if (has_closed_arc(b)) os << ", arc-ray family";
    if (touching) os << ", " << planar::touching_not_normal(b).size() << " non-normal rays";
    return os.str();
}

void planar_lattice(const PlanarBody& b, const std::string& kind, const std::string& dot) {
    if (kind == "faces" || kind == "exposed") {
        const planar::FaceLattice L =
            kind == "faces" ? planar::special_face_lattice(b) : planar::special_exposed_lattice(b);
        const std::function<std::string(const FaceDescriptor&)> label = [](const FaceDescriptor& f) { return f.str(); };
        const std::function<int(const FaceDescriptor&)> rank = [](const FaceDescriptor& f) { return f.dim(); };
        const std::function<std::string(const FaceDescriptor&)> note = [&](const FaceDescriptor& f) {
            return planar::is_exposed(b, f) ? std::string("exposed") : std::string("non-exposed");
        };
        print_rows(L, label, rank, note);
        if (has_closed_arc(b)) std::cout << "# arc points form a one-parameter family; one representative per arc\n";
        write_dot(dot, L, label, rank, kind);
        return;
    }
    std::vector<Cone2> cones;
    for (const auto& f : planar::special_exposed_lattice(b).elements()) {
        const Cone2 n = planar::normal_cone(b, f);
        if (kind == "normal") {
            cones.push_back(n);
        } else {
            for (const auto& t : n.faces()) cones.push_back(t);
        }
    }
    cones = unique_cones(std::move(cones));
    const auto L = lattice::FiniteLattice<Cone2>::build(cones, planar::cone_leq);
    const std::function<std::string(const Cone2&)> label = [](const Cone2& c) { return c.str(); };
    const std::function<int(const Cone2&)> rank = [](const Cone2& c) { return c.dim(); };
    const std::function<std::string(const Cone2&)> note = [&](const Cone2& c) {
        return planar::is_normal_cone(b, c) ? std::string("normal") : std::string("touching only");
    };
    print_rows(L, label, rank, note);
    std::cout << cone_family_summary(b, cones, kind == "touching") << '\n';
    write_dot(dot, L, label, rank, kind);
}

std::vector<int> parse_blocks(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("--blocks expects positive integers separated by commas, got '" + s + "'");
        }
    }
    if (out.empty()) throw ParseError("--blocks is empty");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Face lattices, normal and touching cones of convex bodies"};
    app.require_subcommand(1);

    std::string body_ref, kind = "faces", dot, out, suite = "all";
    auto* lat = app.add_subcommand("lattice", "Print a face or cone lattice");
    lat->add_option("body", body_ref, "Body file or fixture name")->required();
    lat->add_option("--kind", kind, "faces, exposed, normal or touching")
        ->check(CLI::IsMember({"faces", "exposed", "normal", "touching"}));
    lat->add_option("--dot", dot, "Write the Hasse diagram in Graphviz format");

    auto* pol = app.add_subcommand("polar", "Write the polar body");
    pol->add_option("body", body_ref, "Body file or fixture name")->required();
    pol->add_option("--out", out, "Output file (stdout if omitted)");

    auto* chk = app.add_subcommand("check", "Run a check suite and print a JSON report");
    chk->add_option("body", body_ref, "Body file or fixture name")->required();
    std::vector<std::string> suites{"all"};
    for (const auto& s : checks::suite_names()) suites.push_back(s);
    chk->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(suites));

    auto* ss = app.add_subcommand("statespace", "Floating point experiments on quantum state spaces");
    ss->require_subcommand(1);
    std::string blocks = "2";
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    double tol = 1e-9, phi = 0;
    auto* bloch = ss->add_subcommand("bloch", "Sharpness and duality on random states");
    bloch->add_option("--blocks", blocks, "Block sizes of the matrix algebra, e.g. 2,1");
    bloch->add_option("--samples", samples, "Number of random samples (default 1000)");
    bloch->add_option("--seed", seed, "Random seed");
    bloch->add_option("--tol", tol, "Violation tolerance");
    auto* cone = ss->add_subcommand("cone", "Projection and section of the three-level cone by a plane");
    cone->add_option("--phi", phi, "Plane angle in degrees, 0 < phi < 90")->required();
    cone->add_option("--samples", samples, "Boundary resolution (default 3600)");
    cone->add_option("--tol", tol, "Flat spot tolerance (default 1e-6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (lat->parsed()) {
            const Body b = bodyio::resolve_body(body_ref);
            if (const auto* p = std::get_if<Polytope>(&b)) polytope_lattice(*p, kind, dot);
            else planar_lattice(std::get<PlanarBody>(b), kind, dot);
            return 0;
        }
        if (pol->parsed()) {
            const Body b = bodyio::resolve_body(body_ref);
            const Body q = std::holds_alternative<Polytope>(b) ? Body{polytope::polar(std::get<Polytope>(b))}
                                                               : Body{planar::polar_planar(std::get<PlanarBody>(b))};
            if (out.empty()) std::cout << bodyio::to_json(q).dump(2) << '\n';
            else bodyio::save_body(q, out, "polar of " + body_ref);
            return 0;
        }
        if (chk->parsed()) {
            const checks::CheckReport r = checks::run_check(bodyio::resolve_body(body_ref), body_ref, suite);
            std::cout << r.to_json().dump(2) << '\n';
            return r.exit_code();
        }
        if (bloch->parsed()) {
            const auto r = checks::bloch_report(parse_blocks(blocks), samples ? samples : 1000, tol, seed);
            std::cout << r.to_json().dump(2) << '\n';
            return r.exit_code();
        }
        if (cone->parsed()) {
            const double tau_flat = cone->count("--tol") ? tol : statespace::Tolerances{}.flat;
            const auto r = checks::cone_report(phi, samples ? samples : 3600, tau_flat);
            std::cout << r.to_json().dump(2) << '\n';
            return r.exit_code();
        }
    } catch (const Error& e) {
        std::cerr << "facelat: " << e.what() << '\n';
        return kInputError;
    }
    return 0;
}
