#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eclc/cli.hpp"

namespace fs = std::filesystem;
using namespace eclc::cli;

namespace {

fs::path scenario(const std::string& name) { return fs::path(ECLC_SCENARIO_DIR) / (name + ".eclc"); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("eclc_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

fs::path write_temp(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / ("eclc_cli_test_" + name);
    std::ofstream(p) << text;
    return p;
}

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "eclc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, Validate) {
    auto ok = invoke({"validate", scenario("coherence").string()});
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "OK: 3 worlds, 2 edges, 0 observers\n");

    auto bad = write_temp("bad.eclc", "world a { energy=1, lambda=1 }\nedge a -> b { deltaE=1 }\n");
    auto err = invoke({"validate", bad.string()});
    EXPECT_EQ(err.code, 1);
    EXPECT_NE(err.err.find(":2:11: unknown world 'b'"), std::string::npos) << err.err;

    EXPECT_EQ(invoke({"validate", "/nonexistent/file.eclc"}).code, 1);
}

TEST(Cli, Prove) {
    auto ok = invoke({"prove", scenario("coherence").string(), "--sequent", "eq1"});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_NE(ok.out.find("proved, depth 5"), std::string::npos);
    EXPECT_NE(ok.out.find("cost: gamma 1 vs delta 1"), std::string::npos);

    std::string text = slurp(scenario("coherence"));
    text.replace(text.find("world w1 { energy=100, lambda=8 }"), 33, "world w1 { energy=100, lambda=1 }");
    auto tight = write_temp("tight.eclc", text);
    auto fail = invoke({"prove", tight.string(), "--sequent", "eq1"});
    EXPECT_EQ(fail.code, 1);
    EXPECT_NE(fail.out.find("depth_exceeded"), std::string::npos) << fail.out;

    EXPECT_EQ(invoke({"prove", scenario("coherence").string(), "--sequent", "eqq1"}).code, 2);
    EXPECT_EQ(invoke({"prove", scenario("coherence").string(), "--sequent", "eq1", "--world", "w9"}).code, 2);
    EXPECT_EQ(invoke({"prove", scenario("coherence").string()}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
}

TEST(Cli, RunCoherenceMatchesGolden) {
    auto dir = fresh_dir("golden");
    auto r = invoke({"run", scenario("coherence").string(), "--seed", "42", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("coherence: rate=", 0), 0u);
    EXPECT_EQ(lines(slurp(dir / "per_world.csv")), 4u);
    EXPECT_EQ(slurp(dir / "per_world.csv"), slurp(fs::path(ECLC_GOLDEN_DIR) / "coherence" / "per_world.csv"));
    EXPECT_EQ(slurp(dir / "report.json"), slurp(fs::path(ECLC_GOLDEN_DIR) / "coherence" / "report.json"));
}

TEST(Cli, RunReciprocityWritesTrialRows) {
    auto dir = fresh_dir("reciprocity");
    auto r = invoke({"run", scenario("reciprocity").string(), "--trials", "50", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(slurp(dir / "trials.csv")), 101u);
    EXPECT_EQ(slurp(dir / "trials.csv").rfind("trial,direction,success,proof_depth,failure_reason\n", 0), 0u);
}

TEST(Cli, FormatFlagSelectsFiles) {
    auto dir = fresh_dir("json_only");
    ASSERT_EQ(invoke({"run", scenario("accessibility").string(), "--format", "json", "--out", dir.string()}).code, 0);
    EXPECT_TRUE(fs::exists(dir / "report.json"));
    EXPECT_FALSE(fs::exists(dir / "per_world.csv"));
    EXPECT_FALSE(fs::exists(dir / "trials.csv"));
    EXPECT_EQ(invoke({"run", scenario("accessibility").string(), "--format", "xml"}).code, 2);
}

TEST(Cli, FailedRunWritesNothing) {
    auto dir = fresh_dir("failed");
    auto bad = write_temp("wrongkind.eclc", "scenario reciprocity\nworld a { energy=1, lambda=1 }\n");
    EXPECT_EQ(invoke({"run", bad.string(), "--out", dir.string()}).code, 1);
    EXPECT_FALSE(fs::exists(dir));
    auto broken = write_temp("broken.eclc", "world a { energy=1 }\n");
    EXPECT_EQ(invoke({"run", broken.string(), "--out", dir.string()}).code, 1);
    EXPECT_FALSE(fs::exists(dir));
}

TEST(Cli, SeedPrecedence) {
    auto text = slurp(scenario("reciprocity"));
    text.erase(text.find("seed=42\n"), 8);
    auto unseeded = write_temp("unseeded.eclc", text);

    auto seed_of = [](const fs::path& dir) {
        const std::string json = slurp(dir / "report.json");
        const auto at = json.rfind("\"seed\": ");
        return json.substr(at + 8, json.find('\n', at) - at - 8);
    };
    auto dir = fresh_dir("seed");
    ::setenv("ECLC_SEED", "7", 1);
    ASSERT_EQ(invoke({"run", unseeded.string(), "--format", "json", "--out", dir.string()}).code, 0);
    EXPECT_EQ(seed_of(dir), "7");
    ASSERT_EQ(invoke({"run", scenario("reciprocity").string(), "--format", "json", "--out", dir.string()}).code, 0);
    EXPECT_EQ(seed_of(dir), "42");
    ASSERT_EQ(invoke({"run", scenario("reciprocity").string(), "--seed", "9", "--format", "json", "--out",
                      dir.string()})
                  .code,
              0);
    EXPECT_EQ(seed_of(dir), "9");
    ::unsetenv("ECLC_SEED");
}

TEST(Cli, Fit) {
    auto csv = write_temp("points.csv", "kappa,pi\n0,1\n1,0.61\n2,0.19\n");
    auto r = invoke({"fit", csv.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("rate=0.763", 0), 0u) << r.out;
    auto degenerate = write_temp("one.csv", "0,1\n");
    EXPECT_EQ(invoke({"fit", degenerate.string()}).code, 1);
    auto garbage = write_temp("garbage.csv", "kappa,pi\n0,1\nx,y\n");
    EXPECT_EQ(invoke({"fit", garbage.string()}).code, 1);
}
