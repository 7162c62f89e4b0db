#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "facelat/bodyio.hpp"

using namespace facelat;
using namespace facelat::bodyio;
namespace fs = std::filesystem;

namespace {

std::string planar_doc(const std::string& features, const std::string& extra = "") {
    return R"({"type": "planar", "features": [)" + features + "]" + extra + "}";
}

const char* kTriangleFeatures =
    R"({"kind": "segment", "from": ["0", "0"], "to": ["1", "0"]},
       {"kind": "segment", "from": ["1", "0"], "to": ["0", "1"]},
       {"kind": "segment", "from": ["0", "1"], "to": ["0", "0"]})";

}  // namespace

TEST(BodyIo, ShippedFilesMatchBuiltInFixtures) {
    const fs::path dir = FACELAT_DEFAULT_FIXTURES;
    std::size_t n = 0;
    for (const auto& [name, make] : fixtures::planar_registry()) {
        const Body b = load_body(dir / (name + ".json"));
        ASSERT_TRUE(std::holds_alternative<planar::PlanarBody>(b)) << name;
        EXPECT_EQ(std::get<planar::PlanarBody>(b), make()) << name;
        ++n;
    }
    for (const auto& [name, make] : fixtures::polytope_registry()) {
        const Body b = load_body(dir / (name + ".json"));
        ASSERT_TRUE(std::holds_alternative<polytope::Polytope>(b)) << name;
        EXPECT_EQ(std::get<polytope::Polytope>(b), make()) << name;
        ++n;
    }
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".json";
    EXPECT_EQ(files, n);
}

TEST(BodyIo, RoundTrip) {
    for (const auto& [name, make] : fixtures::planar_registry()) {
        const Body b = make();
        EXPECT_EQ(std::get<planar::PlanarBody>(parse_body_text(to_json(b).dump())), make()) << name;
    }
    for (const auto& [name, make] : fixtures::polytope_registry()) {
        const Body b = make();
        EXPECT_EQ(std::get<polytope::Polytope>(parse_body_text(to_json(b).dump())), make()) << name;
    }
}

TEST(BodyIo, ParsesFlagsAndRationals) {
    const Body b = parse_body_text(planar_doc(
        R"({"kind": "segment", "from": ["0", "0"], "to": ["2", "0"], "closed": false},
           {"kind": "segment", "from": ["2", "0"], "to": ["1", "4/2"]},
           {"kind": "segment", "from": ["1", "2"], "to": ["0", "0"]})",
        R"(, "vertex_closed": [false, true, true])"));
    const auto& p = std::get<planar::PlanarBody>(b);
    EXPECT_FALSE(p.feature(0).closed);
    EXPECT_FALSE(p.junction_closed(0));
    EXPECT_EQ(p.junction(2), fixtures::v2(1, 2));
}

TEST(BodyIo, RejectsFloatsAndMalformedInput) {
    EXPECT_THROW(parse_body_text(R"({"type": "polytope", "ambient_dim": 1, "vertices": [[0.5], ["1"]]})"), ParseError);
    EXPECT_THROW(parse_body_text(R"({"type": "polytope", "ambient_dim": 1, "vertices": [[1], ["2"]]})"), ParseError);
    EXPECT_THROW(parse_body_text(R"({"type": "polytope", "ambient_dim": 1, "vertices": [["0.5"], ["1"]]})"), ParseError);
    EXPECT_THROW(parse_body_text(R"({"type": "polytope", "ambient_dim": 1, "vertices": [["1e3"], ["1"]]})"), ParseError);
    EXPECT_THROW(parse_body_text(R"({"type": "polytope", "ambient_dim": 2, "vertices": [["1"], ["2"]]})"), ParseError);
    EXPECT_THROW(parse_body_text(R"({"type": "polytope", "vertices": [["1"]]})"), ParseError);
    EXPECT_THROW(parse_body_text(R"({"type": "sphere"})"), ParseError);
    EXPECT_THROW(parse_body_text(R"({"type": "polytope", )"), ParseError);
    EXPECT_THROW(parse_body_text(planar_doc(kTriangleFeatures, R"(, "vertex_closed": [true])")), ParseError);
    EXPECT_THROW(parse_body_text(planar_doc(R"({"kind": "spline", "from": ["0", "0"], "to": ["1", "0"]})")), ParseError);
    EXPECT_NO_THROW(parse_body_text(planar_doc(kTriangleFeatures)));
}

TEST(BodyIo, RejectsNonPythagoreanArc) {
    try {
        parse_body_text(planar_doc(
            R"({"kind": "segment", "from": ["0", "0"], "to": ["1", "0"]},
               {"kind": "arc", "center": ["0", "0"], "radius_sq": "1", "from": ["1", "0"], "to": ["1/2", "1/2"]},
               {"kind": "segment", "from": ["1/2", "1/2"], "to": ["0", "0"]})"));
        FAIL() << "accepted an endpoint off the circle";
    } catch (const InvalidBody& e) {
        EXPECT_NE(std::string(e.what()).find("circle"), std::string::npos) << e.what();
    }
}

TEST(BodyIo, NonConvexDeletionRejected) {
    // Deleting an open edge between two present vertices leaves a non-convex set.
    EXPECT_THROW(parse_body_text(planar_doc(
                     R"({"kind": "segment", "from": ["0", "0"], "to": ["1", "0"], "closed": false},
                        {"kind": "segment", "from": ["1", "0"], "to": ["0", "1"]},
                        {"kind": "segment", "from": ["0", "1"], "to": ["0", "0"]})")),
                 InvalidBody);
}

TEST(BodyIo, ResolveHonoursEnvironmentOverride) {
    const fs::path dir = fs::temp_directory_path() / "facelat_fixture_override";
    fs::create_directories(dir);
    save_body(Body{fixtures::segment()}, dir / "square.json");
    ASSERT_EQ(setenv("FACELAT_FIXTURES", dir.c_str(), 1), 0);
    EXPECT_EQ(std::get<polytope::Polytope>(resolve_body("square")), fixtures::segment());
    // Names missing from the override directory fall back to the built-in bodies.
    EXPECT_EQ(std::get<planar::PlanarBody>(resolve_body("lens")), fixtures::lens());
    unsetenv("FACELAT_FIXTURES");
    EXPECT_EQ(std::get<polytope::Polytope>(resolve_body("square")), fixtures::square());
    EXPECT_THROW(resolve_body("no_such_body"), ParseError);
    fs::remove_all(dir);
}
