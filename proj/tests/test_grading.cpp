#include <gtest/gtest.h>

#include "rosq/grading.hpp"

using namespace rosq;

TEST(Grading, GeneratorDegrees) {
  EXPECT_EQ(degree_of_generator(Generator::parse("u1"), 3), (TriDegree{{0, 0}, 0}));
  EXPECT_EQ(degree_of_generator(Generator::parse("ubar"), 3), (TriDegree{kRho, 0}));
  EXPECT_EQ(degree_of_generator(Generator::parse("u2sigma"), 3), (TriDegree{{2, -2}, 0}));
  EXPECT_EQ(degree_of_generator(Generator::parse("asigma"), 3), (TriDegree{{0, -1}, 1}));
  EXPECT_EQ(degree_of_generator(Generator::parse("v1"), 3), (TriDegree{kRho, 0}));
  EXPECT_EQ(degree_of_generator(Generator::parse("v3"), 3), (TriDegree{7 * kRho, 0}));
}

TEST(Grading, UbarIndexOutOfRange) {
  EXPECT_THROW(degree_of_generator(Generator::parse("u3"), 3), ArgumentError);
  EXPECT_THROW(degree_of_generator(Generator::parse("u0"), 3), ArgumentError);
  EXPECT_THROW(Generator::parse("w2"), ArgumentError);
}

TEST(Grading, GeneratorNamesRoundTrip) {
  for (const char* name : {"u1", "u7", "ubar", "u2sigma", "asigma", "v4"})
    EXPECT_EQ(Generator::parse(name).name(), name);
}

TEST(Grading, MonomialDegree) {
  Monomial m{Theory::en, {}, 7, 0, 7};
  EXPECT_EQ(degree_of_monomial(m, 3), (TriDegree{{7, 0}, 7}));
  Monomial g{Theory::en, {0, 4}, 12, 4, 4};
  EXPECT_EQ(degree_of_monomial(g, 3), (TriDegree{{20, 0}, 4}));
  Monomial neg{Theory::en, {}, 0, 0, -1};
  EXPECT_THROW(degree_of_monomial(neg, 3), ArgumentError);
  Monomial bad{Theory::bpr, {}, 1, 0, 0};
  EXPECT_THROW(degree_of_monomial(bad, 3), ArgumentError);
}

TEST(Grading, DifferentialTargetShift) {
  const TriDegree src{{4, 0}, 0};
  for (int r : {3, 7, 15}) {
    const TriDegree t = differential_target(src, r);
    EXPECT_EQ(t.stem, (RODegree{3, 0}));
    EXPECT_EQ(t.s, r);
  }
}

TEST(Grading, SolvePointMatchesMonomial) {
  for (int a = -12; a <= 12; ++a)
    for (int b = -6; b <= 6; ++b)
      for (int s = 0; s <= 12; ++s) {
        auto sol = solve_point(Theory::en, {{a, b}, s});
        if (!sol) {
          EXPECT_NE((a - b - s) % 4, 0);
          continue;
        }
        EXPECT_EQ(degree_of_monomial(sol->generator, 2), (TriDegree{{a, b}, s}));
      }
}

TEST(Grading, SolvePointBprWeight) {
  auto sol = solve_point(Theory::bpr, {{6, 0}, 6});
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->weight, 6);
  EXPECT_EQ(sol->generator.asigma, 6);
  EXPECT_FALSE(solve_point(Theory::bpr, {{-4, 0}, 0}));
  EXPECT_TRUE(solve_point(Theory::en, {{-4, 0}, 0}));
}

TEST(Grading, IntegerStemAdmissibility) {
  for (int a = -20; a <= 20; ++a)
    for (int s = 0; s <= 20; ++s)
      EXPECT_EQ(solve_point(Theory::en, {{a, 0}, s}).has_value(), ((a - s) % 4 + 4) % 4 == 0);
}

TEST(Grading, FamilyPagesAndWeights) {
  EXPECT_EQ(family_page(1), 3);
  EXPECT_EQ(family_page(2), 7);
  EXPECT_EQ(family_page(3), 15);
  EXPECT_EQ(vbar_weight(1), 1);
  EXPECT_EQ(vbar_weight(2), 3);
  EXPECT_EQ(vbar_weight(4), 15);
  EXPECT_EQ(two_adic_valuation(12), 2);
  EXPECT_EQ(two_adic_valuation(-8), 3);
  EXPECT_EQ(two_adic_valuation(-3), 0);
}

TEST(Grading, MonomialString) {
  Monomial m{Theory::en, {1, 0, 2}, 3, -2, 7};
  EXPECT_EQ(m.str(), "u1 u3^2 ubar^3 u2sigma^-2 asigma^7");
  EXPECT_EQ((Monomial{Theory::en, {}, 0, 0, 0}).str(), "1");
  EXPECT_EQ((Monomial{Theory::bpr, {0, 2}, 0, 0, 6}).str(), "v2^2 asigma^6");
}

TEST(Grading, TheoryNames) {
  EXPECT_EQ(parse_theory("en"), Theory::en);
  EXPECT_EQ(parse_theory("bpr"), Theory::bpr);
  EXPECT_THROW(parse_theory("ko"), ArgumentError);
}
