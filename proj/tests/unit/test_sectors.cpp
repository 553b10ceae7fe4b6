#include <gtest/gtest.h>

#include <numbers>

#include "causticlab/sectors.hpp"

using namespace causticlab;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(StokesRays, RepeatedPairGivesOneLine) {
  const auto rays = stokes_rays({0.0, 0.0, 1.0});
  ASSERT_EQ(rays.size(), 2u);
  EXPECT_NEAR(rays[0], kPi / 2, 1e-14);
  EXPECT_NEAR(rays[1], 3 * kPi / 2, 1e-14);
}

TEST(StokesRays, EqualEigenvaluesGiveNoRays) { EXPECT_TRUE(stokes_rays({2.0, 2.0, 2.0}).empty()); }

TEST(StokesRays, RaysAnnihilateTheRealPart) {
  const std::vector<Complex> u{{0.3, 1.0}, {-1.0, 0.2}, {2.0, -0.5}};
  const auto rays = stokes_rays(u);
  EXPECT_EQ(rays.size(), 6u);
  for (const double a : rays) {
    double best = 1.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) best = std::min(best, std::abs((std::polar(1.0, a) * (u[i] - u[j])).real()));
    EXPECT_LT(best, 1e-12);
  }
}

TEST(AdmissibleAngle, SymmetricPair) {
  const SectorConfig c = admissible_angle({kPi / 2, 3 * kPi / 2});
  EXPECT_NEAR(c.phi, 0.0, 1e-14);
  EXPECT_NEAR(c.eps, kPi / 12, 1e-14);
}

TEST(AdmissibleAngle, NoRays) {
  const SectorConfig c = admissible_angle({});
  EXPECT_EQ(c.phi, 0.0);
  EXPECT_NEAR(c.eps, kPi / 12, 1e-14);
}

TEST(AdmissibleAngle, FourRays) {
  const SectorConfig c = admissible_angle({0.0, kPi / 3, kPi, 4 * kPi / 3});
  EXPECT_NEAR(c.phi, 2 * kPi / 3, 1e-14);
  EXPECT_NEAR(c.eps, kPi / 12, 1e-14);
  EXPECT_NEAR(ray_clearance(c.phi, {0.0, kPi / 3, kPi, 4 * kPi / 3}), kPi / 3, 1e-14);
}

TEST(AdmissibleAngle, NarrowGapShrinksEps) {
  const std::vector<double> rays{0.0, 0.2, kPi, kPi + 0.2};
  const SectorConfig c = admissible_angle(rays);
  EXPECT_NEAR(c.eps, std::min((kPi - 0.2) / 4, kPi / 12), 1e-14);
  EXPECT_GT(ray_clearance(c.phi, rays), 1e-6);
}

TEST(Sectors, OverlapSitsBetweenConsecutiveSectors) {
  const SectorConfig c = admissible_angle({kPi / 2, 3 * kPi / 2});
  EXPECT_NEAR(c.upper(0) - c.lower(0), kPi + 2 * c.eps, 1e-14);
  EXPECT_GT(c.overlap_arg(0), c.lower(1));
  EXPECT_LT(c.overlap_arg(0), c.upper(0));
}

TEST(DominancePattern, TwoByTwo) {
  // u = (0, 1): on arg z = 0 the solution e^{-z} decays, so S(0, 1) may be
  // non-zero while S(1, 0) is pinned.
  const std::vector<Complex> u{0.0, 1.0};
  const auto allowed = dominance_pattern(u, 0.0);
  const auto reverse = dominance_pattern(u, kPi);
  EXPECT_NE(allowed(0, 1), allowed(1, 0));
  EXPECT_EQ(allowed(0, 1), reverse(1, 0));
  CMatrix S = CMatrix::Identity(2, 2);
  if (allowed(0, 1)) S(0, 1) = 5.0;
  else S(1, 0) = 5.0;
  EXPECT_EQ(pattern_violation(S, u, 0.0), 0.0);
  EXPECT_EQ(pattern_violation(S, u, kPi), 5.0);
}

TEST(DominancePattern, CoalescentPairIsPinned) {
  const auto allowed = dominance_pattern({0.0, 0.0, 1.0}, 0.0);
  EXPECT_FALSE(allowed(0, 1));
  EXPECT_FALSE(allowed(1, 0));
}
