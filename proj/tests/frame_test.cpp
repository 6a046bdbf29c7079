#include <gtest/gtest.h>

#include "eclc/errors.hpp"
#include "eclc/frame.hpp"

using namespace eclc;

namespace {

Frame line3() {
    Frame f;
    f.add_world(World{"a", {}, 5.0, 0.0, 4});
    f.add_world(World{"b", {Formula::atom("P")}, 0.5, 1.0, 4});
    f.add_world(World{"c", {Formula::atom("Q")}, 3.0, 2.0, 4});
    f.add_edge(Edge{"a", "b", 1.0});
    f.add_edge(Edge{"b", "c", 1.0});
    return f;
}

}  // namespace

TEST(Frame, RejectsMalformedDeclarations) {
    Frame f = line3();
    EXPECT_THROW(f.add_world(World{"a", {}, 1.0, 0.0, 1}), std::invalid_argument);
    EXPECT_THROW(f.add_world(World{"d", {}, -1.0, 0.0, 1}), std::invalid_argument);
    EXPECT_THROW(f.add_world(World{"d", {}, 1.0, -1.0, 1}), std::invalid_argument);
    EXPECT_THROW(f.add_world(World{"d", {}, 1.0, 0.0, 0}), std::invalid_argument);
    EXPECT_THROW(f.add_edge(Edge{"a", "zz", 1.0}), UnknownWorld);
    EXPECT_THROW(f.add_edge(Edge{"a", "b", 2.0}), std::invalid_argument);
    EXPECT_THROW(f.add_edge(Edge{"c", "a", -1.0}), std::invalid_argument);
    EXPECT_THROW((void)f.world("nope"), UnknownWorld);
}

TEST(Frame, AccessibilityNeedsEnergy) {
    Frame f = line3();
    EXPECT_TRUE(accessible(f, "a", "b"));
    EXPECT_FALSE(accessible(f, "b", "c"));  // E(b) = 0.5 < 1
    EXPECT_FALSE(accessible(f, "b", "a"));  // no edge
    EXPECT_THROW(accessible(f, "a", "x"), UnknownWorld);
}

TEST(Frame, DiamondNeedsBudgetAndAccess) {
    Frame f = line3();
    CostModel m;
    const Formula p = Formula::atom("P");
    EXPECT_TRUE(eval_diamond(f, "a", p, 1.0, m));
    EXPECT_FALSE(eval_diamond(f, "a", p, 0.5, m));
    EXPECT_FALSE(eval_diamond(f, "a", Formula::atom("Q"), 10.0, m));
    EXPECT_EQ(eval_prop(f, "a", Formula::diamond(1.0, p), m), 1);
    EXPECT_EQ(eval_prop(f, "b", p, m), 1);
    EXPECT_EQ(eval_prop(f, "a", p, m), 0);
}

TEST(Frame, HopDistanceFollowsAccessibleEdges) {
    Frame f = line3();
    EXPECT_EQ(hop_distance(f, "a", "a"), 0u);
    EXPECT_EQ(hop_distance(f, "a", "b"), 1u);
    EXPECT_EQ(hop_distance(f, "a", "c"), std::nullopt);
    f.world("b").energy = 2.0;
    EXPECT_EQ(hop_distance(f, "a", "c"), 2u);
    auto path = shortest_path(f, "a", "c");
    ASSERT_TRUE(path);
    EXPECT_EQ(path->hops, 2u);
    EXPECT_DOUBLE_EQ(path->total_delta_e, 2.0);
}
