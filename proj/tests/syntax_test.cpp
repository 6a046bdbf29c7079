#include <gtest/gtest.h>

#include "eclc/syntax.hpp"
#include "support/generators.hpp"

using namespace eclc;

TEST(Syntax, PrecedenceAndAssociativity) {
    const Formula A = Formula::atom("A"), B = Formula::atom("B"), C = Formula::atom("C");
    EXPECT_EQ(parse_formula("A -o B -o C"), Formula::lolli(A, Formula::lolli(B, C)));
    EXPECT_EQ(parse_formula("A * B * C"), Formula::tensor(Formula::tensor(A, B), C));
    EXPECT_EQ(parse_formula("A & B * C"), Formula::with(A, Formula::tensor(B, C)));
    EXPECT_EQ(parse_formula("!A * B"), Formula::tensor(Formula::bang(A), B));
    EXPECT_EQ(parse_formula("<1.5>A"), Formula::diamond(1.5, A));
    EXPECT_EQ(parse_formula("A ⊗ B ⊸ C"), Formula::lolli(Formula::tensor(A, B), C));
    EXPECT_EQ(parse_formula("~A"), Formula::atom("A", {}, false));
    EXPECT_EQ(parse_formula("Classical(up)"), Formula::atom("Classical", {"up"}, false));
}

TEST(Syntax, FormatsMinimalParentheses) {
    EXPECT_EQ(format_formula(parse_formula("(A -o B) -o C")), "(A -o B) -o C");
    EXPECT_EQ(format_formula(parse_formula("A * (B * C)")), "A * (B * C)");
    EXPECT_EQ(format_formula(parse_formula("!(A & B)")), "!(A & B)");
    EXPECT_EQ(format_formula(parse_formula("Entangled( A , B )")), "Entangled(A,B)");
}

TEST(Syntax, ReportsErrorPositions) {
    try {
        parse_formula("A * )");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 5u);
    }
    EXPECT_THROW(parse_formula("A B"), ParseError);
    EXPECT_THROW(parse_formula("<-1>A"), ParseError);
    EXPECT_THROW(parse_formula(""), ParseError);
}

TEST(Syntax, RandomTreesReparse) {
    testkit::Rng rng(31);
    for (int i = 0; i < 2000; ++i) {
        const Formula f = testkit::random_named_formula(rng, 5);
        const std::string text = format_formula(f);
        ASSERT_EQ(parse_formula(text), f) << text;
    }
}

TEST(Syntax, RealsRoundTrip) {
    testkit::Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double v = testkit::random_real(rng);
        EXPECT_EQ(parse_real(format_real(v)), v);
    }
    EXPECT_EQ(parse_real("1e400"), std::nullopt);
    EXPECT_EQ(parse_real("1.5x"), std::nullopt);
}
