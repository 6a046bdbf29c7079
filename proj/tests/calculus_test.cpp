#include <gtest/gtest.h>

#include "eclc/calculus.hpp"
#include "eclc/errors.hpp"
#include "eclc/syntax.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace eclc;

namespace {

Formula F(const char* text) { return parse_formula(text); }

ProofResult prove_text(std::vector<const char*> gamma, std::vector<const char*> delta, unsigned bound,
                       std::vector<Formula> laws = {}) {
    Sequent s;
    for (auto g : gamma) s.gamma.push_back(F(g));
    for (auto d : delta) s.delta.push_back(F(d));
    return prove(s, bound, CostModel{}, 0.0, laws);
}

}  // namespace

TEST(Prove, LinearityBattery) {
    auto id = prove_text({"A"}, {"A"}, 5);
    EXPECT_TRUE(id.proved);
    EXPECT_EQ(id.depth, 1u);

    auto dup = prove_text({"A"}, {"A * A"}, 10);
    EXPECT_FALSE(dup.proved);

    auto bang_dup = prove_text({"!A"}, {"A * A"}, 10);
    EXPECT_TRUE(bang_dup.proved);
    EXPECT_EQ(bang_dup.depth, 4u);

    EXPECT_TRUE(prove_text({"A * B"}, {"B * A"}, 5).proved);
    EXPECT_FALSE(prove_text({"A", "B"}, {"A"}, 10).proved);
    EXPECT_TRUE(prove_text({"!B", "A"}, {"A"}, 5).proved);
}

TEST(Prove, EntanglementLawDerivesDecoherence) {
    const auto law = F("E * Entangled(A,B) -o Decohered(A) * Residual(B)");
    auto r = prove_text({"E", "Entangled(A,B)"}, {"Decohered(A)", "Residual(B)"}, 8, {law});
    ASSERT_TRUE(r.proved);
    EXPECT_EQ(r.depth, 5u);
    EXPECT_EQ(r.tree->height(), r.depth);
    auto too_shallow = prove_text({"E", "Entangled(A,B)"}, {"Decohered(A)", "Residual(B)"}, 4, {law});
    EXPECT_FALSE(too_shallow.proved);
    EXPECT_EQ(too_shallow.failure_reason, FailureReason::DepthExceeded);
}

TEST(Prove, ConnectiveRules) {
    EXPECT_TRUE(prove_text({"A", "A -o B"}, {"B"}, 5).proved);
    EXPECT_TRUE(prove_text({}, {"A -o A"}, 5).proved);
    EXPECT_TRUE(prove_text({"A & B"}, {"B"}, 5).proved);
    EXPECT_TRUE(prove_text({"A"}, {"A & A"}, 5).proved);
    EXPECT_TRUE(prove_text({"!A"}, {"!A"}, 5).proved);
    EXPECT_FALSE(prove_text({"A"}, {"!A"}, 5).proved);
    EXPECT_TRUE(prove_text({"<2>A"}, {"<2>A"}, 5).proved);
    EXPECT_TRUE(prove_text({}, {}, 1).proved);
}

TEST(Prove, FailureReasons) {
    auto none = prove_text({"A"}, {"B"}, 5);
    EXPECT_EQ(none.failure_reason, FailureReason::NoRuleApplies);
    auto deep = prove_text({"!A"}, {"B"}, 4);
    EXPECT_EQ(deep.failure_reason, FailureReason::DepthExceeded);

    CostModel m;
    m.atom_costs = {{"A", 1.0}, {"B", 2.0}};
    auto cost = prove(Sequent{{F("A")}, {F("B")}}, 5, m, 0.0);
    EXPECT_EQ(cost.failure_reason, FailureReason::CostInvalid);
    EXPECT_THROW(prove(Sequent{{F("A")}, {F("A")}}, 0, m, 0.0), std::invalid_argument);
}

TEST(Prove, ConsumedCostIsCurvatureScaled) {
    CostModel m;
    m.atom_costs = {{"A", 2.0}};
    m.alpha = 0.5;
    auto r = prove(Sequent{{F("A")}, {F("A")}}, 3, m, 2.0);
    ASSERT_TRUE(r.proved);
    EXPECT_DOUBLE_EQ(r.consumed_cost, 4.0);
}

TEST(Prove, CostVerdictIndependentOfKappa) {
    testkit::Rng rng(11);
    const auto atoms = testkit::atom_pool(3);
    CostModel m;
    m.atom_costs = {{"A", 0.1}, {"B", 0.7}, {"C", 1.3}};
    for (int i = 0; i < 1000; ++i) {
        const Sequent s = testkit::random_sequent(rng, atoms, 2, 3);
        m.alpha = testkit::random_real(rng);
        const bool flat = cost_valid(s, m, 0.0);
        EXPECT_EQ(flat, cost_valid(s, m, testkit::random_real(rng)));
    }
}

TEST(Prove, ProofDepthIsMinimal) {
    testkit::Rng rng(5);
    const auto atoms = testkit::atom_pool(3);
    for (int i = 0; i < 300; ++i) {
        const Sequent s = testkit::random_sequent(rng, atoms, 2, 3);
        auto r = prove(s, 5, CostModel{}, 0.0);
        if (!r.proved) continue;
        EXPECT_EQ(r.tree->height(), r.depth);
        EXPECT_FALSE(testkit::naive_provable(s.gamma, s.delta, r.depth - 1)) << format_sequent(s);
    }
}

TEST(Prove, AgreesWithNaiveEnumerator) {
    testkit::Rng rng(2024);
    const auto atoms = testkit::atom_pool(3);
    for (int i = 0; i < 500; ++i) {
        const Sequent s = testkit::random_sequent(rng, atoms, 2, 3);
        EXPECT_EQ(prove(s, 5, CostModel{}, 0.0).proved, testkit::naive_provable(s.gamma, s.delta, 5))
            << format_sequent(s);
    }
}

TEST(Render, IndentsPremises) {
    auto r = prove_text({"A * B"}, {"B * A"}, 5);
    ASSERT_TRUE(r.proved);
    EXPECT_EQ(render_derivation(*r.tree),
              "tensor-left  A * B |- B * A\n"
              "  tensor-right  A, B |- B * A\n"
              "    identity  B |- B\n"
              "    identity  A |- A\n");
    EXPECT_EQ(format_sequent(Sequent{{}, {F("A")}}), "|- A");
    EXPECT_EQ(format_sequent(Sequent{{F("A")}, {}}), "A |-");
}

namespace {

Frame two_worlds() {
    Frame f;
    f.add_world(World{"w", {F("A"), F("A -o B"), F("!Quantum(q)")}, 3.0, 0.0, 4});
    f.add_world(World{"v", {}, 1.0, 1.0, 4});
    f.add_edge(Edge{"w", "v", 2.0});
    return f;
}

}  // namespace

TEST(Transition, CommitsConsumptionDeliveryAndEnergy) {
    Frame f = two_worlds();
    auto out = transition(f, "w", "v", Sequent{{F("A"), F("A -o B")}, {F("B")}}, CostModel{});
    ASSERT_TRUE(out.valid);
    EXPECT_EQ(out.required_depth, 2u);
    EXPECT_EQ(f.world("w").props, (std::vector<Formula>{F("!Quantum(q)")}));
    EXPECT_EQ(f.world("v").props, (std::vector<Formula>{F("B")}));
    EXPECT_DOUBLE_EQ(f.world("w").energy, 1.0);
    EXPECT_THROW(transition(f, "w", "v", Sequent{{F("A"), F("A -o B")}, {F("B")}}, CostModel{}),
                 PreconditionViolation);
}

TEST(Transition, FailureLeavesFrameUntouched) {
    Frame f = two_worlds();
    const Frame before = f;
    auto unprovable = transition(f, "w", "v", Sequent{{F("A")}, {F("B")}}, CostModel{});
    EXPECT_FALSE(unprovable.valid);
    EXPECT_EQ(f, before);
    auto too_deep = transition(f, "w", "v", Sequent{{F("A"), F("A -o B")}, {F("B")}}, CostModel{}, 3);
    EXPECT_FALSE(too_deep.valid);
    EXPECT_EQ(too_deep.proof.failure_reason, FailureReason::DepthExceeded);
    EXPECT_EQ(f, before);
    auto backwards = transition(f, "v", "w", Sequent{{}, {}}, CostModel{});
    EXPECT_FALSE(backwards.accessible);
    EXPECT_EQ(f, before);
    EXPECT_THROW(transition(f, "w", "nowhere", Sequent{{}, {}}, CostModel{}), UnknownWorld);
}

TEST(Measure, CollapsesOnceOnly) {
    Frame f = two_worlds();
    auto out = measure(f, "w", "v", "q", "up", CostModel{});
    ASSERT_TRUE(out.valid);
    EXPECT_EQ(out.required_depth, 4u);
    EXPECT_EQ(f.world("v").props, (std::vector<Formula>{classical_outcome("up")}));
    EXPECT_EQ(coherence(classical_outcome("up")), 0);
    EXPECT_THROW(measure(f, "w", "v", "q", "up", CostModel{}), PreconditionViolation);
}
