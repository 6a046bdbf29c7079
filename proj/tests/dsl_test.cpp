#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eclc/dsl.hpp"
#include "support/generators.hpp"

using namespace eclc;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ParseError error_of(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return ParseError(0, 0, "");
}

const char* kMinimal =
    "scenario coherence\n"
    "world a { energy=1, kappa=0, lambda=2 }\n"
    "world b { energy=1, kappa=1, lambda=2 }\n"
    "edge a -> b { deltaE=0.5 }\n";

}  // namespace

TEST(Dsl, ParsesDirectives) {
    const auto c = parse_scenario(
        "# comment\n"
        "scenario reciprocity\r\n"
        "alpha = 0.5\n"
        "cost Quantum = 1.5\n"
        "trials=7   # trailing comment\n"
        "seed=99\n"
        "noise=0.25\n"
        "edge a -> b { deltaE=1 }\n"
        "world a { energy=3, kappa=0.5, lambda=4 }\n"
        "world b { lambda=2, energy=1 }\n"
        "prop a : !Quantum(A)\n"
        "law Quantum(A) ⊸ Classical(up)\n"
        "observer o1 home=a horizon=2\n"
        "sequent s a -> b : !Quantum(A) ⊢ Classical(up)\n");
    EXPECT_EQ(c.scenario_kind, ScenarioKind::Reciprocity);
    EXPECT_DOUBLE_EQ(c.cost_model.alpha, 0.5);
    EXPECT_DOUBLE_EQ(c.cost_model.atom_costs.at("Quantum"), 1.5);
    EXPECT_EQ(c.trials, 7u);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_DOUBLE_EQ(c.noise, 0.25);
    ASSERT_EQ(c.frame.worlds().size(), 2u);
    EXPECT_EQ(c.frame.world("b").lambda, 2u);
    EXPECT_EQ(c.frame.world("a").props.size(), 1u);
    EXPECT_EQ(c.frame.laws().size(), 1u);
    ASSERT_NE(c.find_sequent("s"), nullptr);
    EXPECT_EQ(c.find_sequent("s")->sequent.delta.front(), classical_outcome("up"));
    EXPECT_EQ(c.observers.front().horizon, 2u);
}

TEST(Dsl, KappaDefaultsToIndexTimesKappa0) {
    const auto c = parse_scenario(
        "world a { energy=1, lambda=1 }\nworld b { energy=1, lambda=1 }\n"
        "world c { energy=1, lambda=1, kappa=7 }\nkappa0 = 1.5\n");
    EXPECT_DOUBLE_EQ(c.frame.world("a").kappa, 0.0);
    EXPECT_DOUBLE_EQ(c.frame.world("b").kappa, 1.5);
    EXPECT_DOUBLE_EQ(c.frame.world("c").kappa, 7.0);
}

TEST(Dsl, ErrorsCarryPositions) {
    auto e = error_of(std::string(kMinimal) + "edge a -> nowhere { deltaE=1 }\n");
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.column(), 11u);
    EXPECT_NE(std::string(e.what()).find("unknown world 'nowhere'"), std::string::npos);

    e = error_of(std::string(kMinimal) + "world a { energy=1, lambda=1 }\n");
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.column(), 7u);

    e = error_of(std::string(kMinimal) + "world c { energy=-1, lambda=1 }\n");
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.column(), 18u);

    e = error_of(std::string(kMinimal) + "prop a : A * \n");
    EXPECT_EQ(e.line(), 5u);

    e = error_of(std::string(kMinimal) + "frobnicate\n");
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.column(), 1u);

    e = error_of("");
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 1u);

    e = error_of(std::string(kMinimal) + "edge a -> b { deltaE=1 }\n");
    EXPECT_EQ(e.line(), 5u);

    e = error_of(std::string(kMinimal) + "world c { energy=1, lambda=0 }\n");
    EXPECT_EQ(e.line(), 5u);

    e = error_of(std::string(kMinimal) + "seed=1\nseed=2\n");
    EXPECT_EQ(e.line(), 6u);

    e = error_of("scenario nonsense\n");
    EXPECT_EQ(e.column(), 10u);
}

TEST(Dsl, ShippedScenariosRoundTrip) {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(ECLC_SCENARIO_DIR)) {
        if (entry.path().extension() != ".eclc") continue;
        const auto config = parse_scenario(slurp(entry.path()));
        EXPECT_EQ(parse_scenario(serialize_scenario(config)), config) << entry.path();
        ++seen;
    }
    EXPECT_GE(seen, 3);
}

TEST(Dsl, RandomConfigsRoundTrip) {
    testkit::Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        const ScenarioConfig c = testkit::random_config(rng);
        const std::string text = serialize_scenario(c);
        ScenarioConfig back;
        ASSERT_NO_THROW(back = parse_scenario(text)) << text;
        ASSERT_EQ(back, c) << text;
        EXPECT_EQ(serialize_scenario(back), text);
    }
}
