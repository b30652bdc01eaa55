#include <gtest/gtest.h>

#include "rosq/homotopy.hpp"
#include "support/compare.hpp"

using namespace rosq;

namespace {

SpectralSequenceRun full_run(int n, int b_min = -2, int b_max = 2) {
  return run_to_einfty(build_e2_en(n, {-4, (1 << (n + 3)) + 4, b_min, b_max, 0, family_page(n) + 16}, 3, n + 2));
}

}  // namespace

TEST(Homotopy, RealKTheory) {
  auto run = run_to_einfty(build_e2_en(1, {0, 8, 0, 0, 0, 16}, 1, 5));
  const std::vector<std::string> expected = {"Z2", "Z/2", "Z/2", "0", "Z2{2W}", "0", "0", "0", "Z2"};
  auto groups = homotopy_groups(run.einfty, 0, 8);
  ASSERT_EQ(groups.size(), expected.size());
  for (int a = 0; a <= 8; ++a) {
    EXPECT_EQ(groups[a].group, expected[a]) << "stem " << a;
    EXPECT_TRUE(groups[a].extensions_resolved);
  }
  // η in filtration 1, η² in filtration 2
  EXPECT_EQ(groups[1].entries.at(0).s, 1);
  EXPECT_EQ(groups[2].entries.at(0).s, 2);
}

TEST(Homotopy, RealKTheoryOrdersMatchOracle) {
  PageLattice e2 = build_e2_en(1, {0, 8, 0, 0, 0, 16}, 1, 5);
  auto run = run_to_einfty(e2);
  auto rep = oracle_page_homology(e2.context(), e2.window(), e2.padded());
  auto groups = homotopy_groups(run.einfty, 0, 8);
  for (const auto& g : groups) {
    long long oracle = 0;
    for (int s = 0; s <= 16; ++s) {
      auto it = rep.log2_orders.find({g.stem, s});
      if (it != rep.log2_orders.end()) oracle += it->second.back();
    }
    EXPECT_EQ(g.log2_order, oracle) << "stem " << g.stem.a;
  }
}

TEST(Homotopy, Periodicity) {
  for (int n = 1; n <= 3; ++n) {
    auto run = full_run(n, 0, 0);
    EXPECT_EQ(periodicity(run.einfty), 1 << (n + 2)) << "n=" << n;
  }
}

TEST(Homotopy, PredictedDeathPages) {
  EXPECT_EQ(predicted_death_page(3, 3), 3);
  EXPECT_EQ(predicted_death_page(3, 7), 7);
  EXPECT_EQ(predicted_death_page(3, 11), 3);
  EXPECT_EQ(predicted_death_page(3, 15), 15);
  EXPECT_EQ(predicted_death_page(3, 31), 15);
  EXPECT_EQ(predicted_death_page(1, 7), 3);
}

TEST(Homotopy, VanishingBelowKRho) {
  for (int n = 1; n <= 3; ++n) {
    auto run = full_run(n);
    for (const auto& v : check_vanishing_krho_minus_1(run, -2, 2)) {
      EXPECT_TRUE(v.passed) << "n=" << n << " k=" << v.k << ": " << v.detail;
      EXPECT_FALSE(v.points.empty());
      for (const auto& p : v.points) {
        EXPECT_NE(p.death_page, 0);
        EXPECT_EQ(p.death_page, p.predicted_page);
      }
    }
  }
}

TEST(Homotopy, VanishingDetectsASurvivor) {
  auto run = full_run(2);
  run.einfty.find({{0, 1}, 3})->descriptor = ModuleDescriptor::tors_level(1, 1);
  auto v = check_vanishing_krho_minus_1(run, 1, 1);
  EXPECT_FALSE(v[0].passed);
}

TEST(Homotopy, StronglyEven) {
  for (int n = 1; n <= 3; ++n) {
    auto run = full_run(n);
    for (const auto& v : check_strongly_even(run, -2, 2)) EXPECT_TRUE(v.passed) << "n=" << n << " k=" << v.k << ": " << v.detail;
  }
}

TEST(Homotopy, RestrictionNeedsFullWitt) {
  CoefficientContext ctx{Theory::en, 2, 3, 4};
  LatticePoint p{{{0, 0}, 0}, {}, 0, ModuleDescriptor::witt_level(1, 0)};
  EXPECT_TRUE(restriction_is_bijective(p, ctx));
  p.descriptor = ModuleDescriptor::witt_level(1, 1);
  EXPECT_FALSE(restriction_is_bijective(p, ctx));
  p.descriptor = ModuleDescriptor::tors_level(1, 1);
  EXPECT_FALSE(restriction_is_bijective(p, ctx));
}

TEST(Homotopy, UbarShift) {
  for (int n = 1; n <= 3; ++n) {
    auto run = full_run(n);
    EXPECT_TRUE(ubar_shift_mismatches(run.einfty).empty()) << "n=" << n;
  }
  auto run = full_run(2);
  run.einfty.find({{4, 0}, 0})->descriptor = ModuleDescriptor::witt_level(1, 0);
  EXPECT_FALSE(ubar_shift_mismatches(run.einfty).empty());
}

TEST(Homotopy, WindowRequirements) {
  auto run = run_to_einfty(build_e2_en(2, {0, 8, 0, 0, 0, 4}, 3, 4));
  EXPECT_THROW(homotopy_groups(run.einfty, 0, 4), WindowError);
  auto ok = run_to_einfty(build_e2_en(2, {0, 8, 0, 0, 0, 8}, 3, 4));
  EXPECT_NO_THROW(homotopy_groups(ok.einfty, 0, 8));
  EXPECT_THROW(homotopy_groups(ok.einfty, 0, 9), WindowError);
  EXPECT_THROW(homotopy_groups(ok.pages[0], 0, 4), ArgumentError);
  EXPECT_THROW(check_vanishing_krho_minus_1(ok, 1, 1), WindowError);
  auto bpr = run_to_einfty(build_e2_bpr({0, 8, 0, 0, 0, 8}, 2));
  EXPECT_THROW(check_vanishing_krho_minus_1(bpr, 0, 0), ArgumentError);
}

TEST(Homotopy, HigherHeightLabels) {
  auto run = run_to_einfty(build_e2_en(2, {0, 16, 0, 0, 0, 16}, 3, 4));
  auto groups = homotopy_groups(run.einfty, 0, 0);
  EXPECT_EQ(groups[0].group, "W[[u]]{W}");
}
