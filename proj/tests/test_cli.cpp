#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "json.hpp"

using namespace psts;
using namespace psts::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("psts_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static RunConfig base() {
        RunConfig c;
        c.caustic = std::array<double, 2>{1.0, 0.5};
        return c;
    }

    fs::path dir_;
};

std::vector<std::vector<double>> read_csv(std::istream& is, std::string& header) {
    std::getline(is, header);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_F(CliTest, FamilyCsv) {
    RunConfig c = base();
    c.samples = 96;
    std::stringstream out;
    ASSERT_EQ(cmd_family(c, out), ok);
    std::string header;
    auto rows = read_csv(out, header);
    EXPECT_EQ(header, "u,t1,t2,t3,x1,y1,x2,y2,x3,y3,a,b,a_c,b_c,m,K");
    ASSERT_EQ(rows.size(), 96u);
    const ConfocalPair p = c.pair();
    // vertex 2 at u equals vertex 1 a third of the period later (32 rows)
    for (size_t k = 0; k + 32 < rows.size(); ++k) {
        EXPECT_NEAR(rows[k][6], rows[k + 32][4], 1e-12);
        EXPECT_NEAR(rows[k][7], rows[k + 32][5], 1e-12);
    }
    for (const auto& r : rows) {
        ASSERT_EQ(r.size(), 16u);
        EXPECT_NEAR(r[4], p.a * std::cos(r[1]), 1e-12);
        EXPECT_NEAR(r[5], p.b * std::sin(r[1]), 1e-12);
        EXPECT_EQ(r[15], p.K);
    }
}

TEST_F(CliTest, SurfaceObjCounts) {
    RunConfig c = base();
    c.nu = 16;
    c.nv = 5;
    c.out = path("s.obj");
    std::stringstream out;
    ASSERT_EQ(cmd_surface(c, out), ok);
    std::ifstream is(c.out);
    std::string line;
    int v = 0, f = 0;
    while (std::getline(is, line)) {
        v += line.rfind("v ", 0) == 0;
        f += line.rfind("f ", 0) == 0;
    }
    EXPECT_EQ(v, 3 * 17 * 5);
    EXPECT_EQ(f, 3 * 16 * 4 * 2);
    auto summary = nlohmann::json::parse(out.str());
    EXPECT_EQ(summary["vertices"], 3 * 17 * 5);
}

TEST_F(CliTest, ToroidalMeshIsWeldedInU) {
    const ConfocalPair p = base().pair();
    io::Mesh m = io::surface_mesh(p, 16, 5, Embedding::toroidal, 0.0, io::ColorBy::mean);
    EXPECT_EQ(m.vertices.size(), 3u * 16 * 5);
    EXPECT_EQ(m.faces.size(), 3u * 16 * 4 * 2);
    // every interior edge of a facet is shared by exactly two triangles
    std::map<std::pair<unsigned, unsigned>, int> edges;
    for (const auto& f : m.faces)
        for (int k = 0; k < 3; ++k) {
            unsigned a = f[k], b = f[(k + 1) % 3];
            edges[{std::min(a, b), std::max(a, b)}]++;
        }
    int boundary = 0;
    for (const auto& [e, n] : edges) {
        EXPECT_LE(n, 2);
        boundary += n == 1;
    }
    EXPECT_EQ(boundary, 3 * 2 * 16);  // only the v = 0 and v = 1 rims are open
    EXPECT_EQ(m.colors.size(), m.vertices.size());
}

TEST_F(CliTest, PlyCarriesRawCurvature) {
    RunConfig c = base();
    c.nu = 16;
    c.nv = 5;
    c.out = path("s.ply");
    std::stringstream out;
    ASSERT_EQ(cmd_surface(c, out), ok);
    const std::string data = slurp(c.out);
    const std::string end = "end_header\n";
    const size_t body = data.find(end);
    ASSERT_NE(body, std::string::npos);
    EXPECT_NE(data.find("format binary_little_endian 1.0"), std::string::npos);
    EXPECT_NE(data.find("property double gaussian"), std::string::npos);

    io::Mesh ref = io::surface_mesh(c.pair(), 16, 5, Embedding::straight, 0.0, io::ColorBy::gaussian);
    const size_t stride = 3 * 8 + 3 + 2 * 8;
    const char* p = data.data() + body + end.size();
    for (size_t k = 0; k < ref.vertices.size(); k += 7) {
        double x, g, h;
        std::memcpy(&x, p + k * stride, 8);
        std::memcpy(&g, p + k * stride + 27, 8);
        std::memcpy(&h, p + k * stride + 35, 8);
        EXPECT_EQ(x, ref.vertices[k].x);
        EXPECT_NEAR(g, ref.gaussian[k], 1e-12);
        EXPECT_NEAR(h, ref.mean[k], 1e-12);
    }
    EXPECT_EQ(data.size(), body + end.size() + ref.vertices.size() * stride + ref.faces.size() * 13);
}

TEST_F(CliTest, DivergingColorMap) {
    io::Rgb lo = io::diverging_color(0.0), mid = io::diverging_color(0.5), hi = io::diverging_color(1.0);
    EXPECT_GT(lo.b, lo.r);
    EXPECT_GT(hi.r, hi.b);
    EXPECT_EQ(mid.r, mid.g);
    EXPECT_EQ(mid.g, mid.b);
}

TEST_F(CliTest, CurvatureReport) {
    RunConfig c = base();
    c.nu = 256;
    c.nv = 33;
    c.out = path("curv");
    std::stringstream out;
    ASSERT_EQ(cmd_curvature(c, out), ok);
    for (int facet = 1; facet <= 3; ++facet) {
        std::ifstream is(c.out + "_facet" + std::to_string(facet) + ".csv");
        std::string header;
        auto rows = read_csv(is, header);
        EXPECT_EQ(header, "u,v,K,H");
        EXPECT_EQ(rows.size(), 257u * 33);
        for (const auto& r : rows) EXPECT_LT(r[2], 0.0);
    }
    auto j = nlohmann::json::parse(slurp(c.out + "_critical.json"));
    ASSERT_EQ(j["facets"].size(), 3u);
    for (const auto& f : j["facets"]) {
        for (const char* field : {"gaussian", "mean"}) {
            ASSERT_EQ(f[field]["critical_points"].size(), 4u) << field;
            for (const auto& cp : f[field]["critical_points"]) EXPECT_NEAR(cp["v"].get<double>(), 0.5, 1e-4);
        }
        EXPECT_LT(f["gaussian"]["max"].get<double>(), 0.0);
    }
}

TEST_F(CliTest, TangleContacts) {
    RunConfig c = base();
    c.samples = 256;
    c.out = path("tangle");
    std::stringstream out, err;
    ASSERT_EQ(cmd_tangle(c, out, err), ok) << err.str();
    auto j = nlohmann::json::parse(slurp(c.out + ".json"));
    EXPECT_EQ(j["report"]["classification"], "hopf_3_link");
    for (int i = 1; i <= 3; ++i) EXPECT_TRUE(fs::exists(c.out + "_contact_" + std::to_string(i) + ".obj"));
}

TEST_F(CliTest, TangleCentersAndAll) {
    RunConfig c = base();
    c.samples = 256;
    c.curve_set = "centers";
    std::stringstream out, err;
    ASSERT_EQ(cmd_tangle(c, out, err), ok);
    auto j = nlohmann::json::parse(out.str());
    EXPECT_EQ(std::abs(j["report"]["matrix"][0][1].get<int>()), 3);

    c.curve_set = "all";
    std::stringstream out2;
    ASSERT_EQ(cmd_tangle(c, out2, err), ok);
    auto m = nlohmann::json::parse(out2.str())["report"]["matrix"];
    ASSERT_EQ(m.size(), 8u);
    for (size_t a = 0; a < 8; ++a) {
        EXPECT_EQ(m[a][a], 0);
        for (size_t b = 0; b < 8; ++b) EXPECT_EQ(m[a][b], m[b][a]);
    }
}

TEST_F(CliTest, InvariantsExitCodes) {
    RunConfig c = base();
    c.samples = 256;
    std::stringstream out;
    EXPECT_EQ(cmd_invariants(c, out), ok);
    auto j = nlohmann::json::parse(out.str());
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_LE(j["reflection_max_deviation"].get<double>(), 1e-9);
}

TEST_F(CliTest, BadConfigurations) {
    std::stringstream out, err;
    RunConfig none;
    EXPECT_EQ(guarded([&] { return cmd_family(none, out); }, err), bad_config);
    RunConfig both = base();
    both.outer = std::array<double, 2>{2.0, 1.0};
    EXPECT_EQ(guarded([&] { return cmd_family(both, out); }, err), bad_config);
    RunConfig bad = base();
    bad.caustic = std::array<double, 2>{0.5, 1.0};
    EXPECT_EQ(guarded([&] { return cmd_invariants(bad, out); }, err), bad_config);
    RunConfig fmt = base();
    fmt.format = "stl";
    fmt.out = path("x.stl");
    EXPECT_EQ(guarded([&] { return cmd_surface(fmt, out); }, err), bad_config);
    RunConfig set = base();
    set.curve_set = "edges";
    EXPECT_EQ(guarded([&] { return cmd_tangle(set, out, err); }, err), bad_config);
    RunConfig unwritable = base();
    unwritable.out = path("missing/dir/file.csv");
    EXPECT_EQ(guarded([&] { return cmd_family(unwritable, out); }, err), bad_config);
}

TEST_F(CliTest, OuterEllipseInput) {
    const ConfocalPair ref = base().pair();
    RunConfig c;
    c.outer = std::array<double, 2>{ref.a, ref.b};
    const ConfocalPair p = c.pair();
    EXPECT_NEAR(p.a_c, 1.0, 1e-8);
    EXPECT_NEAR(p.b_c, 0.5, 1e-8);
}
