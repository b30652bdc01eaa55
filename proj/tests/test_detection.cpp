#include <gtest/gtest.h>

#include <random>

#include "rosq/detection.hpp"
#include "support/symbolic.hpp"

using namespace rosq;
using rosq::testing::product;

namespace {

Monomial random_bpr(std::mt19937& rng, int max_var) {
  Monomial m{Theory::bpr, {}, 0, static_cast<int>(rng() % 9) - 4, static_cast<int>(rng() % 6)};
  for (int i = 1; i <= max_var; ++i)
    if (rng() % 3 == 0) m.set_var(i, 1 + static_cast<int>(rng() % 3));
  m.trim();
  return m;
}

std::vector<DetectionClass> classes_up_to(int top) {
  std::vector<DetectionClass> out;
  for (int i = 1; i <= top; ++i) {
    out.push_back({DetectionFamily::h, i});
    out.push_back({DetectionFamily::h_squared, i});
    out.push_back({DetectionFamily::g, i});
  }
  return out;
}

}  // namespace

TEST(Detection, ParseAndLabels) {
  EXPECT_EQ(DetectionClass::parse("h3").label(), "h3");
  EXPECT_EQ(DetectionClass::parse("h_2^2").label(), "h2^2");
  EXPECT_EQ(DetectionClass::parse("g1").alias(), "h2^4");
  EXPECT_EQ(DetectionClass::parse("g2").family, DetectionFamily::g);
  for (const char* bad : {"", "h", "h0", "k2", "g2^2", "hx", "h21"}) EXPECT_THROW(DetectionClass::parse(bad), ArgumentError) << bad;
}

TEST(Detection, ImagesSitInTheAdamsStem) {
  for (const auto& c : classes_up_to(6)) {
    const TriDegree t = bpr_degree(bpr_image(c));
    EXPECT_EQ(t.stem, (RODegree{c.expected_stem(), 0})) << c.label();
    EXPECT_EQ(t.s, bpr_image(c).asigma);
  }
  EXPECT_EQ(DetectionClass::parse("g1").expected_stem(), 20);
  EXPECT_EQ(DetectionClass::parse("h4").expected_stem(), 15);
}

TEST(Detection, ComparisonMapIsARingMap) {
  std::mt19937 rng(31337);
  for (int n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 300; ++trial) {
      const Monomial x = random_bpr(rng, n + 1), y = random_bpr(rng, n + 1);
      const auto fx = comparison_map(x, n), fy = comparison_map(y, n), fxy = comparison_map(product(x, y), n);
      ASSERT_EQ(fxy.has_value(), fx.has_value() && fy.has_value());
      if (!fxy) continue;
      EXPECT_EQ(*fxy, product(*fx, *fy));
      EXPECT_EQ(degree_of_monomial(*fxy, n), bpr_degree(product(x, y)));
    }
  EXPECT_EQ(*comparison_map(Monomial{Theory::bpr, {}, 0, 0, 0}, 3), (Monomial{Theory::en, {}, 0, 0, 0}));
}

TEST(Detection, ComparisonMapCommutesWithDifferentials) {
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= n + 2; ++k) {
      const auto b = generator_differential(Theory::bpr, n + 2, k);
      ASSERT_TRUE(comparison_map(b.source, n));
      EXPECT_EQ(comparison_map(b.source, n)->u2sigma, 1 << (k - 1));
      const auto image = comparison_map(b.target, n);
      if (k > n) {
        EXPECT_FALSE(image) << "n=" << n << " k=" << k;
        continue;
      }
      const auto e = generator_differential(Theory::en, n, k);
      ASSERT_TRUE(image);
      EXPECT_EQ(*image, e.target) << "n=" << n << " k=" << k;
      EXPECT_EQ(b.page, e.page);
    }
}

TEST(Detection, Matrix) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& c : classes_up_to(n + 1)) {
      SCOPED_TRACE(c.label() + " at n=" + std::to_string(n));
      DetectionResult r;
      ASSERT_NO_THROW(r = certify_detection(c, n));
      EXPECT_EQ(r.verdict == DetectionVerdict::detected, detection_expected(c, n));
      if (r.verdict == DetectionVerdict::detected) {
        ASSERT_TRUE(r.degree);
        EXPECT_EQ(r.degree->stem.a, c.expected_stem());
      } else {
        EXPECT_FALSE(r.image);
      }
    }
}

TEST(Detection, Ranges) {
  EXPECT_TRUE(detection_expected(DetectionClass::parse("h3"), 3));
  EXPECT_FALSE(detection_expected(DetectionClass::parse("h4"), 3));
  EXPECT_TRUE(detection_expected(DetectionClass::parse("g2"), 3));
  EXPECT_FALSE(detection_expected(DetectionClass::parse("g3"), 3));
  EXPECT_EQ(certify_detection(DetectionClass::parse("g2"), 3).degree, (TriDegree{{44, 0}, 12}));
}

TEST(Detection, KilledImageIsAViolation) {
  const auto c = DetectionClass::parse("h1");
  auto run = run_to_einfty(build_e2_en(1, detection_window(c, 1), 1, 4));
  EXPECT_EQ(certify_detection(c, 1, run).verdict, DetectionVerdict::detected);
  run.einfty.find({{1, 0}, 1})->descriptor = ModuleDescriptor::zero();
  EXPECT_THROW(certify_detection(c, 1, run), PatternViolation);
  EXPECT_THROW(certify_detection(c, 2, run), ArgumentError);
}
