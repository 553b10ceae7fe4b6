#include <gtest/gtest.h>

#include <cmath>

#include "causticlab/caustic.hpp"
#include "causticlab/error.hpp"
#include "fixtures.hpp"

using namespace causticlab;
using causticlab::testing::fixture;
using causticlab::testing::manifold;

namespace {

CVector p3(Complex x, Complex y, Complex z) {
  CVector p(3);
  p << x, y, z;
  return p;
}

CMatrix antidiagonal() {
  CMatrix eta = CMatrix::Zero(3, 3);
  eta(0, 2) = eta(1, 1) = eta(2, 0) = 1.0;
  return eta;
}

CausticFrame frame_at(const FrobeniusManifold& M, const CausticCurve& c, double s) {
  return caustic_frame(M, c.point(s), c.tangents(s, 0));
}

}  // namespace

TEST(Classify, DistinguishesTheThreeKindsOfPoint) {
  const FrobeniusManifold M = manifold("h3.json");
  EXPECT_EQ(classify_point(M, p3(0, 1, 1)).kind, PointClass::Caustic);
  EXPECT_EQ(classify_point(M, p3(0, 0, 1)).kind, PointClass::SemisimpleCoalescent);
  EXPECT_EQ(classify_point(M, p3(0, 2, 1)).kind, PointClass::Semisimple);
}

TEST(Classify, BifurcationValueMatchesTheFactorizedDiscriminant) {
  // Discriminant of det(lambda - E∘) for H3, factored by sympy:
  // -y^2 (y - z^3)^5 (27 y + 5 z^3)^3 / 15625.
  const FrobeniusManifold M = manifold("h3.json");
  for (const CVector& p : random_points(3, 6, 5)) {
    const Complex y = p[1], z = p[2];
    const Complex expected = -y * y * std::pow(y - z * z * z, 5) * std::pow(27.0 * y + 5.0 * z * z * z, 3) / 15625.0;
    EXPECT_LT(std::abs(bifurcation_value(M, p) - expected), 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(CausticFrame, HertlingInvariantOnEveryComponent) {
  const std::vector<std::tuple<std::string, std::string, double>> cases = {
      {"h3.json", "y-eq-z3", 5.0},   {"h3.json", "27y-plus-5z3", 3.0}, {"b3.json", "2y-3z2", 4.0},
      {"b3.json", "2y-plus-z2", 3.0}, {"a3.json", "a3-caustic", 3.0},
  };
  for (const auto& [file, curve, m] : cases) {
    const SpecFile spec = fixture(file);
    const FrobeniusManifold M(spec.manifold);
    for (const double s : {0.8, 1.0, 1.2}) {
      const CausticFrame f = frame_at(M, spec.curve(curve), s);
      EXPECT_NEAR(f.m, m, 1e-8) << file << " " << curve << " s=" << s;
      EXPECT_TRUE(hertling_m(f.V).near_integer);
    }
  }
}

TEST(CausticFrame, H3ResidueEntryHasModulusThreeTenths) {
  const SpecFile spec = fixture("h3.json");
  const FrobeniusManifold M(spec.manifold);
  for (const double s : {0.8, 1.0, 1.2}) {
    const CausticFrame f = frame_at(M, spec.curve("y-eq-z3"), s);
    EXPECT_NEAR(std::abs(f.V(0, 1)), 0.3, 1e-10);
    EXPECT_NEAR(f.V(0, 1).real(), 0.0, 1e-10);
  }
}

TEST(CausticFrame, FrameIsOrthonormalAndDiagonalizesU) {
  const SpecFile spec = fixture("h3.json");
  const FrobeniusManifold M(spec.manifold);
  const CausticFrame f = frame_at(M, spec.curve("y-eq-z3"), 1.0);
  const CMatrix& P = f.frame;
  EXPECT_LT(max_abs(P.transpose() * antidiagonal() * P - CMatrix::Identity(3, 3)), 1e-9);
  EXPECT_LT(max_abs(f.V + f.V.transpose()), 1e-10);
  CMatrix off = f.U;
  off.diagonal().setZero();
  EXPECT_LT(max_abs(off), 1e-9);
  EXPECT_LT(std::abs(f.U(0, 0) - f.U(1, 1)), 1e-9);
  // U = E∘ in the frame.
  EXPECT_LT(max_abs(f.frame_inverse * M.euler_multiplication(f.point) * P - f.U), 1e-9);
  EXPECT_LT(f.tangency_residual, 1e-9);
}

TEST(CausticFrame, DegenerateAtTheOrigin) {
  const FrobeniusManifold M = manifold("h3.json");
  try {
    caustic_frame(M, p3(0, 0, 0), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateCoalescence);
  }
}

TEST(CausticFrame, SemisimpleCoalescenceHasNoNilpotent) {
  const FrobeniusManifold M = manifold("h3.json");
  try {
    caustic_frame(M, p3(0, 0, 1), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MultipleNilpotents);
  }
}

TEST(CausticFrame, AlignUndoesSignFlips) {
  const SpecFile spec = fixture("h3.json");
  const FrobeniusManifold M(spec.manifold);
  const CausticFrame ref = frame_at(M, spec.curve("y-eq-z3"), 1.0);
  CausticFrame flipped = ref;
  const CMatrix Q = Eigen::Vector3cd(-1.0, 1.0, -1.0).asDiagonal();
  flipped.frame = ref.frame * Q;
  flipped.frame_inverse = Q * ref.frame_inverse;
  flipped.V = Q * ref.V * Q;
  align_frame(flipped, ref);
  EXPECT_LT(max_abs(flipped.frame - ref.frame), 1e-14);
  EXPECT_LT(max_abs(flipped.V - ref.V), 1e-14);
}

TEST(HertlingM, ClosedFormFromTheResidueEntry) {
  // |V12| = 1/2 - 1/m.
  for (const double m : {3.0, 4.0, 5.0, 7.0}) {
    CMatrix V = CMatrix::Zero(3, 3);
    V(0, 1) = Complex(0, 0.5 - 1.0 / m);
    V(1, 0) = -V(0, 1);
    const HertlingM h = hertling_m(V);
    EXPECT_NEAR(h.m, m, 1e-12);
    EXPECT_TRUE(h.near_integer);
  }
}

TEST(Approach, SlopeRecoversMWithinFivePercent) {
  const std::vector<std::tuple<std::string, std::string, double>> cases = {
      {"h3.json", "y-eq-z3", 5.0},   {"h3.json", "27y-plus-5z3", 3.0}, {"b3.json", "2y-3z2", 4.0},
      {"b3.json", "2y-plus-z2", 3.0}, {"a3.json", "a3-caustic", 3.0},
  };
  for (const auto& [file, curve, m] : cases) {
    const SpecFile spec = fixture(file);
    const FrobeniusManifold M(spec.manifold);
    const CausticFrame f = frame_at(M, spec.curve(curve), 1.0);
    const ApproachFit fit = m_from_approach(M, f.point, f.normal, default_approach_samples());
    EXPECT_LT(std::abs(fit.m - m) / m, 0.05) << file << " " << curve << " got " << fit.m;
  }
}

TEST(Approach, DirectionAlongTheCausticIsAFitFailure) {
  const FrobeniusManifold M = manifold("h3.json");
  try {
    m_from_approach(M, p3(0, 1, 1), p3(1, 0, 0), default_approach_samples());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FitFailure);
  }
}

TEST(Connection, IdentitiesHoldAlongH3Caustic) {
  const SpecFile spec = fixture("h3.json");
  const FrobeniusManifold M(spec.manifold);
  const IdentityReport r =
      connection_identities_check(M, spec.curve("y-eq-z3").curve_map(), {0.8, 0.9, 1.0, 1.1, 1.2}, 1e-4, 1e-6);
  EXPECT_TRUE(r.passed) << "worst " << r.worst.max();
  EXPECT_LT(r.v12_spread, 1e-8);
}
