#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "groves/groves.hpp"
#include "json.hpp"
#include "reference.hpp"

using namespace groves;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Run {
    int code = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run_cli(const std::string& args) {
    const fs::path dir = fs::temp_directory_path() / ("groves_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cmd = std::string("\"") + GROVES_CLI + "\" " + args + " > \"" + (dir / "out").string() +
                            "\" 2> \"" + (dir / "err").string() + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(dir / "out");
    r.err = slurp(dir / "err");
    fs::remove_all(dir);
    return r;
}

std::string config_arg(const std::string& name) { return "--config \"" + reference::config_path(name) + "\""; }

}  // namespace

TEST(Cli, UnknownCommandExits64) {
    EXPECT_EQ(run_cli("frobnicate").code, 64);
    EXPECT_EQ(run_cli("").code, 64);
    EXPECT_EQ(run_cli("--help").code, 0);
}

TEST(Cli, BadFlagsAreValidationErrors) {
    EXPECT_EQ(run_cli("series").code, 1);
    EXPECT_EQ(run_cli("series " + config_arg("uniform_t11") + " --depth 999").code, 1);
    EXPECT_EQ(run_cli("series " + config_arg("uniform_t11") + " --bogus 1").code, 1);
}

TEST(Cli, MalformedConfigNamesTheField) {
    const fs::path p = fs::temp_directory_path() / ("groves_bad_" + std::to_string(::getpid()) + ".json");
    {
        std::ofstream out(p);
        out << R"({"m": 1, "n": 1, "N": 1, "edges": {"a": "1/0", "b": "1", "c": "1"}})";
    }
    const auto r = run_cli("genfun --config \"" + p.string() + "\"");
    fs::remove(p);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("$.edges.a"), std::string::npos) << r.err;
}

TEST(Cli, GenfunPrintsTheClassSystem) {
    const auto r = run_cli("genfun " + config_arg("t12_n1"));
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    const auto expected = reference::parse_matrix(reference::kT12Matrix);
    ASSERT_EQ(j.at("A").size(), expected.size());
    for (std::size_t a = 0; a < expected.size(); ++a)
        for (std::size_t b = 0; b < expected.size(); ++b)
            EXPECT_EQ(parse_poly(j["A"][a][b].get<std::string>(), kXYZ), expected[a][b]);
    EXPECT_EQ(from_json_sparse(j.at("Q").at("sparse")), det(expected));
}

TEST(Cli, SeriesCsv) {
    const auto r = run_cli("series " + config_arg("t12_n1") + " --depth 3");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("class,i,j,k,kind,value\n", 0), 0u);
    EXPECT_NE(r.out.find("\"(0,0,0)\",-1,0,0,p,13/16\n"), std::string::npos);
}

TEST(Cli, VerifyPassesOnTheUniformTorus) {
    const auto r = run_cli("verify " + config_arg("uniform_t11") + " --depth 8 --samples 500 --order 10");
    EXPECT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_FALSE(j.empty());
}

TEST(Cli, LaplacianAndEnumerate) {
    const auto lap = run_cli("laplacian " + config_arg("t12_n1"));
    ASSERT_EQ(lap.code, 0) << lap.err;
    EXPECT_EQ(json::parse(lap.out).at("P_at_1_1"), "0");
    const auto en = run_cli("enumerate " + config_arg("uniform_t11") + " --order 2");
    ASSERT_EQ(en.code, 0) << en.err;
    const json j = json::parse(en.out);
    EXPECT_EQ(j.at("count"), 3);
    EXPECT_EQ(j.at("Z_sum"), "1/3");
}

TEST(Cli, SampleAndArcticWriteFiles) {
    const fs::path svg = fs::temp_directory_path() / ("groves_s_" + std::to_string(::getpid()) + ".svg");
    const auto r = run_cli("sample " + config_arg("uniform_t11") + " --order 12 --seed 3 --out \"" + svg.string() + "\"");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
    const fs::path poly = fs::temp_directory_path() / ("groves_p_" + std::to_string(::getpid()) + ".json");
    const auto a = run_cli("arctic " + config_arg("uniform_t11") + " --resolution 100 --out \"" + svg.string() +
                           "\" --emit-poly \"" + poly.string() + "\"");
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_TRUE(json::parse(slurp(poly)).contains("dual"));
    fs::remove(svg);
    fs::remove(poly);
}
