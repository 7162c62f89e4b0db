#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "facelat/bodyio.hpp"
#include "facelat/fixtures.hpp"

using namespace facelat;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + std::string(FACELAT_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::size_t data_rows(const std::string& out) {
    std::istringstream in(out);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) n += !line.empty() && line[0] != '#';
    return n;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const json* verdict(const json& report, const std::string& id) {
    for (const auto& v : report.at("verdicts")) {
        if (v.at("id") == id) return &v;
    }
    return nullptr;
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("facelat_cli_" + name); }

}  // namespace

TEST(Cli, SquareFaceLatticeHasTenRows) {
    const CliRun r = run("lattice square --kind faces");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(data_rows(r.out), 10u);
}

TEST(Cli, CubeNormalFanDotHasTwentyEightNodes) {
    const fs::path dot = temp("cube.dot");
    const CliRun r = run("lattice cube --kind normal --dot " + dot.string());
    EXPECT_EQ(r.code, 0);
    const std::string text = slurp(dot);
    std::size_t nodes = 0;
    for (std::size_t pos = 0; (pos = text.find("[label=", pos)) != std::string::npos; ++pos) ++nodes;
    EXPECT_EQ(nodes, 28u);
    EXPECT_NE(text.find("digraph"), std::string::npos);
    fs::remove(dot);
}

TEST(Cli, QuarterDiskTouchingSummary) {
    const CliRun r = run("lattice quarterdisk --kind touching");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("3 sectors, 2 edge rays, arc-ray family, 2 non-normal rays"), std::string::npos) << r.out;
}

TEST(Cli, PolarOfSquareIsCrossPolytope) {
    const fs::path out = temp("square_polar.json");
    ASSERT_EQ(run("polar square --out " + out.string()).code, 0);
    const auto q = std::get<polytope::Polytope>(bodyio::load_body(out));
    EXPECT_EQ(q, polytope::Polytope({fixtures::v2(1, 0), fixtures::v2(-1, 0), fixtures::v2(0, 1), fixtures::v2(0, -1)}));
    fs::remove(out);
}

TEST(Cli, PolarOfUnitDiskIsUnitDisk) {
    const CliRun r = run("polar unit_disk");
    ASSERT_EQ(r.code, 0);
    const auto q = std::get<planar::PlanarBody>(bodyio::parse_body_text(r.out));
    EXPECT_TRUE(planar::equal_up_to_rotation(q, fixtures::unit_disk()));
}

TEST(Cli, CheckSquareAllPasses) {
    const CliRun r = run("check square --suite all");
    EXPECT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_EQ(j.at("fixture"), "square");
    EXPECT_EQ(verdict(j, "antitone.normal_cones")->at("status"), "pass");
}

TEST(Cli, StadiumTwoDimensionalRules) {
    const CliRun r = run("check stadium --suite 2d");
    EXPECT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(verdict(j, "2d.non_exposed_rule")->at("status"), "pass");
    EXPECT_EQ(verdict(j, "2d.smoothness")->at("status"), "pass");
    EXPECT_EQ(j.at("counts").at("non_exposed_faces"), 4);
}

TEST(Cli, CutTriangleApexReportsMissingCoatomIntersection) {
    const CliRun r = run("check cut_triangle_apex --suite coatoms");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("not an intersection of coatoms"), std::string::npos) << r.out;
}

TEST(Cli, BodyFileArgument) {
    const fs::path f = temp("segment.json");
    bodyio::save_body(fixtures::segment(), f);
    EXPECT_EQ(run("check " + f.string() + " --suite antitone").code, 0);
    fs::remove(f);
}

TEST(Cli, FixtureDirectoryOverride) {
    const fs::path dir = temp("fixtures");
    fs::create_directories(dir);
    bodyio::save_body(fixtures::triangle(), dir / "square.json");
    const CliRun r = run("lattice square --kind faces");
    const std::string out = run("lattice square --kind faces", "FACELAT_FIXTURES=" + dir.string() + " ").out;
    EXPECT_EQ(data_rows(r.out), 10u);
    EXPECT_EQ(data_rows(out), 8u);
    fs::remove_all(dir);
}

TEST(Cli, StatespaceCone) {
    const CliRun r = run("statespace cone --phi 12");
    EXPECT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_NE(verdict(j, "cone.conic")->at("detail").get<std::string>().find("hyperbolic"), std::string::npos);
    EXPECT_NE(verdict(j, "cone.conic")->at("detail").get<std::string>().find("numeric"), std::string::npos);
    EXPECT_EQ(j.at("counts").at("projection.non_exposed_points"), 2);
    EXPECT_NEAR(j.at("metrics").at("critical_angle_deg").get<double>(), 30.0, 1e-9);
    const json e = json::parse(run("statespace cone --phi 39").out);
    EXPECT_NE(verdict(e, "cone.conic")->at("detail").get<std::string>().find("elliptic"), std::string::npos);
}

TEST(Cli, StatespaceBloch) {
    const CliRun r = run("statespace bloch --blocks 2,1 --samples 200 --seed 7");
    EXPECT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_EQ(j.at("counts").at("samples"), 200);
}

TEST(Cli, InputErrorsExitWithTwo) {
    EXPECT_EQ(run("check no_such_body").code, 2);
    EXPECT_EQ(run("lattice square --kind bogus").code, 2);
    EXPECT_EQ(run("check square --suite bogus").code, 2);
    EXPECT_EQ(run("statespace cone --phi 95").code, 2);
    EXPECT_EQ(run("statespace cone --phi 0").code, 2);
    EXPECT_EQ(run("statespace bloch --blocks 2,x").code, 2);
    EXPECT_EQ(run("").code, 2);
    const fs::path f = temp("float.json");
    std::ofstream(f) << R"({"type": "polytope", "ambient_dim": 1, "vertices": [[0.5], ["1"]]})";
    EXPECT_EQ(run("check " + f.string()).code, 2);
    fs::remove(f);
}
