#include <gtest/gtest.h>

#include <set>

#include "rosq/lattice.hpp"

using namespace rosq;

TEST(MonomialIdeal, ColonAndIntersection) {
  auto x1 = MonomialIdeal::variables(2, 1, 1);
  auto x2 = MonomialIdeal::variables(2, 2, 2);
  EXPECT_TRUE(x1.colon(1).is_unit());
  EXPECT_EQ(x1.colon(2), x1);
  EXPECT_EQ(x1.intersect(x2), MonomialIdeal::generated_by(2, {{1, 1}}));
  EXPECT_EQ((x1 + x2).str(), "(u2,u1)");
  EXPECT_TRUE(MonomialIdeal::variables(2, 1, 0).is_zero());
  EXPECT_TRUE(x1.times(1).subset_of(x1));
  EXPECT_FALSE(x1.subset_of(x1.times(1)));
}

TEST(MonomialIdeal, UnitMultiplier) {
  auto I = MonomialIdeal::generated_by(3, {{0, 2, 1}, {1, 0, 0}});
  EXPECT_EQ(I.times(0), I);
  EXPECT_EQ(I.colon(0), I);
}

TEST(Descriptor, LevelsAndAnnotations) {
  EXPECT_EQ(ModuleDescriptor::witt_level(2, 0).annotation(), "W");
  EXPECT_EQ(ModuleDescriptor::witt_level(2, 1).annotation(), "2W");
  EXPECT_EQ(ModuleDescriptor::tors_level(2, 1).annotation(), "T1");
  EXPECT_EQ(ModuleDescriptor::tors_level(2, 3).annotation(), "T3");
  EXPECT_EQ(ModuleDescriptor::tors_level(2, 3).kind(), DescriptorKind::tors_level);
  EXPECT_THROW(ModuleDescriptor::witt_level(2, 2), ArgumentError);
  EXPECT_THROW(ModuleDescriptor::tors_level(2, 4), ArgumentError);
}

TEST(Descriptor, TorsionCollapsesToZero) {
  auto z = MonomialIdeal::variables(1, 1, 1);
  EXPECT_TRUE(ModuleDescriptor::tors(z, MonomialIdeal::unit(1)).is_zero());
  EXPECT_TRUE(ModuleDescriptor::tors_level(0, 1).kind() == DescriptorKind::tors_level);
}

TEST(Descriptor, ExpandCountsOrders) {
  CoefficientContext ctx{Theory::en, 3, 4, 5};
  // 10 monomials of degree < 4 in two variables, rank 3
  EXPECT_EQ(expand(ModuleDescriptor::witt_level(2, 0), ctx).log2_order(), 10 * 5 * 3);
  EXPECT_EQ(expand(ModuleDescriptor::witt_level(2, 1), ctx).log2_order(), 10 * 4 * 3);
  EXPECT_EQ(expand(ModuleDescriptor::tors_level(2, 1), ctx).log2_order(), 10 * 3);
  // T2 kills the u1-multiples: only u2^k survive
  EXPECT_EQ(expand(ModuleDescriptor::tors_level(2, 2), ctx).log2_order(), 4 * 3);
  EXPECT_EQ(expand(ModuleDescriptor::zero(), ctx).log2_order(), 0);
}

TEST(Descriptor, SmallCounts) {
  // T2 at n = 3, D = 3: 1, u2, u2^2 over F_8
  EXPECT_EQ(expand(ModuleDescriptor::tors_level(2, 2), {Theory::en, 3, 3, 4}).log2_order(), 9);
  // 2W at n = 1, M = 4: one cyclic factor of order 8
  auto e = expand(ModuleDescriptor::witt_level(0, 1), {Theory::en, 1, 5, 4});
  ASSERT_EQ(e.factor_log2.size(), 1u);
  EXPECT_EQ(e.factor_log2[0], 3);
}

TEST(Descriptor, BprBasisIsWeightHomogeneous) {
  CoefficientContext ctx{Theory::bpr, 3, 1, 5};
  auto basis = ctx.basis(4);
  // weight 4 from weights 1, 3, 7: v1^4, v1 v2
  EXPECT_EQ(basis.size(), 2u);
  for (const auto& b : basis) EXPECT_EQ(ctx.weight_of(b), 4);
}

TEST(Window, PaddingLeavesSigmaAlone) {
  Window w{-4, 36, -1, 2, 0, 40};
  Window p = w.padded(16, 16);
  EXPECT_EQ(p.a_min, -20);
  EXPECT_EQ(p.a_max, 52);
  EXPECT_EQ(p.b_min, -1);
  EXPECT_EQ(p.b_max, 2);
  EXPECT_EQ(p.s_min, 0);
  EXPECT_EQ(p.s_max, 56);
  EXPECT_THROW((Window{3, 2, 0, 0, 0, 4}.validate()), ArgumentError);
  EXPECT_THROW((Window{0, 2, 0, 0, -1, 4}.validate()), ArgumentError);
}

TEST(Lattice, E2MatchesExponentEquations) {
  for (int n = 1; n <= 4; ++n) {
    Window w{-6, 10, -2, 2, 0, 12};
    PageLattice e2 = build_e2_en(n, w, 6, n + 3);
    std::set<TriDegree> seen;
    for (const auto& p : e2.points()) seen.insert(p.degree);
    for (int b = w.b_min; b <= w.b_max; ++b)
      for (int a = w.a_min; a <= w.a_max; ++a)
        for (int s = w.s_min; s <= w.s_max; ++s) {
          const TriDegree t{{a, b}, s};
          const bool admissible = ((a - b - s) % 4 + 4) % 4 == 0;
          ASSERT_EQ(seen.count(t) == 1, admissible);
          if (!admissible) continue;
          const auto& d = e2.find(t)->descriptor;
          if (s == 0) {
            EXPECT_EQ(d, ModuleDescriptor::witt_level(n - 1, 0));
          } else {
            EXPECT_EQ(d, ModuleDescriptor::tors_level(n - 1, 1));
          }
        }
    e2.check_invariants();
  }
}

TEST(Lattice, SpotValues) {
  PageLattice e3 = build_e2_en(3, {-4, 8, -4, 4, 0, 8}, 4, 6);
  const auto* p = e3.find({{1, -2}, 3});
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->descriptor, ModuleDescriptor::tors_level(2, 1));
  EXPECT_EQ(p->generator, (Monomial{Theory::en, {}, 1, 0, 3}));
  EXPECT_EQ(e3.presence({{0, -2}, 1}), PageLattice::Presence::none);
  PageLattice e1 = build_e2_en(1, {0, 8, 0, 0, 0, 4}, 1, 4);
  EXPECT_EQ(e1.find({{4, 0}, 0})->descriptor, ModuleDescriptor::witt_level(0, 0));
  EXPECT_EQ(e1.find({{4, 0}, 0})->generator, (Monomial{Theory::en, {}, 2, 1, 0}));
}

TEST(Lattice, PresenceDistinguishesUnknownFromNone) {
  PageLattice e2 = build_e2_en(2, {0, 8, 0, 0, 0, 8}, 4, 5);
  EXPECT_EQ(e2.presence({{1, 0}, 0}), PageLattice::Presence::none);
  EXPECT_EQ(e2.presence({{0, 0}, -4}), PageLattice::Presence::none);
  EXPECT_EQ(e2.presence({{4, 0}, 0}), PageLattice::Presence::present);
  EXPECT_EQ(e2.presence({{400, 0}, 0}), PageLattice::Presence::unknown);
}

TEST(Lattice, BprHasNoNegativeWeights) {
  PageLattice e2 = build_e2_bpr({-8, 8, 0, 0, 0, 8}, 3);
  for (const auto& p : e2.points()) {
    EXPECT_GE(p.weight, 0);
    EXPECT_FALSE(p.descriptor.is_zero());
  }
  EXPECT_EQ(e2.find({{-4, 0}, 0}), nullptr);
  EXPECT_NE(e2.find({{4, 0}, 0}), nullptr);
}

TEST(Lattice, RestrictToIntegerStems) {
  PageLattice e2 = build_e2_en(2, {-4, 8, -2, 2, 0, 8}, 4, 5);
  PageLattice flat = restrict_to_integer_stems(e2);
  for (const auto& p : flat.points()) EXPECT_EQ(p.degree.stem.b, 0);
  EXPECT_EQ(flat.find({{4, 0}, 0})->descriptor, e2.find({{4, 0}, 0})->descriptor);
  PageLattice off = build_e2_en(2, {-4, 8, 1, 2, 0, 8}, 4, 5);
  EXPECT_THROW(restrict_to_integer_stems(off), WindowError);
}

TEST(Lattice, ResourceBound) {
  EXPECT_THROW(build_e2_en(2, {-9000, 9000, -9000, 9000, 0, 100}, 4, 5), ResourceError);
}

TEST(Lattice, HeightRange) {
  EXPECT_THROW(build_e2_en(0, {}, 6, 5), ArgumentError);
  EXPECT_THROW(build_e2_en(9, {}, 6, 5), ArgumentError);
}
