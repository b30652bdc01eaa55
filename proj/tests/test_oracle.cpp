#include <gtest/gtest.h>

#include "support/compare.hpp"

using namespace rosq;
using rosq::testing::compare_with_oracle;
using rosq::testing::engine_vs_oracle;

namespace {

void expect_agreement(const rosq::testing::Comparison& c) {
  EXPECT_GT(c.checked, 0u);
  for (std::size_t i = 0; i < c.mismatches.size() && i < 10; ++i) ADD_FAILURE() << c.mismatches[i].str();
}

}  // namespace

TEST(Oracle, AgreesOnIntegerStems) {
  for (int n = 1; n <= 3; ++n) {
    SCOPED_TRACE("n=" + std::to_string(n));
    expect_agreement(engine_vs_oracle(build_e2_en(n, {-8, 24, 0, 0, 0, 32}, 4, 5)));
  }
}

TEST(Oracle, AgreesOffTheIntegerStems) {
  for (int n = 1; n <= 3; ++n) {
    SCOPED_TRACE("n=" + std::to_string(n));
    expect_agreement(engine_vs_oracle(build_e2_en(n, {-6, 14, -3, 3, 0, 20}, 5, 4)));
  }
}

TEST(Oracle, AgreesForBpr) {
  expect_agreement(engine_vs_oracle(build_e2_bpr({0, 20, 0, 0, 0, 24}, 3, 5)));
}

TEST(Oracle, RecordsEveryPage) {
  PageLattice e2 = build_e2_en(3, {0, 8, 0, 0, 0, 8}, 3, 4);
  auto rep = oracle_page_homology(e2.context(), e2.window(), e2.padded());
  EXPECT_EQ(rep.pages, (std::vector<int>{3, 7, 15, 16}));
  auto partial = oracle_page_homology(e2.context(), e2.window(), e2.padded(), 7);
  EXPECT_EQ(partial.pages, (std::vector<int>{3, 7}));
}

TEST(Oracle, WittOrdersAtHeightOne) {
  // W = Z2 at precision 5 counts as 2^5, 2W as 2^4
  PageLattice e2 = build_e2_en(1, {0, 8, 0, 0, 0, 8}, 1, 5);
  auto rep = oracle_page_homology(e2.context(), e2.window(), e2.padded());
  EXPECT_EQ(rep.log2_orders.at({{0, 0}, 0}).back(), 5);
  EXPECT_EQ(rep.log2_orders.at({{4, 0}, 0}).back(), 4);
  EXPECT_EQ(rep.log2_orders.at({{8, 0}, 0}).back(), 5);
  EXPECT_EQ(rep.log2_orders.at({{3, 0}, 3}).back(), 0);
  EXPECT_EQ(rep.log2_orders.at({{1, 0}, 1}).back(), 1);
}

TEST(Oracle, DetectsATamperedPage) {
  PageLattice e2 = build_e2_en(2, {-4, 12, 0, 0, 0, 12}, 4, 5);
  auto run = run_to_einfty(e2);
  auto rep = oracle_page_homology(e2.context(), e2.window(), e2.padded());
  ASSERT_TRUE(compare_with_oracle(run, rep).mismatches.empty());
  run.einfty.find({{4, 0}, 0})->descriptor = ModuleDescriptor::witt_level(1, 0);
  auto c = compare_with_oracle(run, rep);
  ASSERT_EQ(c.mismatches.size(), 1u);
  EXPECT_EQ(c.mismatches[0].degree, (TriDegree{{4, 0}, 0}));
}
