#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "causticlab/error.hpp"
#include "causticlab/monodromy.hpp"

using namespace causticlab;

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix h3_U() {
  CMatrix U = CMatrix::Zero(3, 3);
  U(0, 0) = U(1, 1) = -0.7;
  U(2, 2) = 2.5;
  return U;
}

CMatrix h3_V() {
  CMatrix V(3, 3);
  V << 0, 0.3 * kI, 0.3, -0.3 * kI, 0, -0.4 * kI, -0.3, 0.4 * kI, 0;
  return V;
}

std::vector<Complex> eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

std::vector<Complex> exp_spectrum(const std::vector<double>& mu) {
  std::vector<Complex> out;
  for (const double m : mu) out.push_back(std::exp(2.0 * kPi * kI * m));
  return out;
}

// Loop around 0 rebuilt from the Stokes data: e^{2 pi i B} (S_0 S_1)^-1.
CMatrix stokes_loop(const MonodromyData& d) {
  const CMatrix B = (2.0 * kPi * kI * d.B_exp).exp();
  return B * (d.stokes[0].S * d.stokes[1].S).inverse();
}

}  // namespace

TEST(Monodromy, VanishingResidueHasTrivialData) {
  CMatrix U = CMatrix::Zero(3, 3);
  U(0, 0) = U(1, 1) = -1.0;
  U(2, 2) = 2.0;
  const MonodromyData d = compute_monodromy_data(U, CMatrix::Zero(3, 3));
  ASSERT_EQ(d.stokes.size(), 2u);
  for (const auto& s : d.stokes) EXPECT_LT(max_abs(s.S - CMatrix::Identity(3, 3)), 1e-9);
  EXPECT_LT(max_abs(d.monodromy_zero - CMatrix::Identity(3, 3)), 1e-9);
  EXPECT_LT(max_abs(d.connection_C - CMatrix::Identity(3, 3)), 1e-9);
}

TEST(Monodromy, TwoByTwoStokesProductMatchesLocalExponent) {
  const double c = 0.1;
  CMatrix U = CMatrix::Zero(2, 2);
  U(1, 1) = 1.0;
  CMatrix V(2, 2);
  V << 0, c, -c, 0;
  const MonodromyData d = compute_monodromy_data(U, V);
  const CMatrix& S0 = d.stokes[0].S;
  const CMatrix& S1 = d.stokes[1].S;
  // tr(S_0 S_1) = 2 + s_0 s_1 must equal tr exp(2 pi i V) = 2 cosh(2 pi c).
  const Complex product = S0(0, 1) * S1(1, 0) + S0(1, 0) * S1(0, 1);
  EXPECT_LT(std::abs(product - 4.0 * std::pow(std::sinh(kPi * c), 2)), 1e-8);
  EXPECT_LT(d.stokes[0].pattern_violation, 1e-9);
  EXPECT_LT(d.stokes[1].pattern_violation, 1e-9);
  EXPECT_LT(multiset_distance(eigenvalues(d.monodromy_zero), {std::exp(-2 * kPi * c), std::exp(2 * kPi * c)}), 1e-8);
}

TEST(Monodromy, H3CausticPointDiagnostics) {
  const MonodromyData d = compute_monodromy_data(h3_U(), h3_V());
  EXPECT_LT(multiset_distance({d.B_exp(0, 0), d.B_exp(1, 1), d.B_exp(2, 2)}, {-0.3, 0.3, 0.0}), 1e-12);
  const auto& g = d.diagnostics;
  EXPECT_LT(g.stokes_consistency, 1e-8);
  EXPECT_LT(g.stokes_pattern, 1e-8);
  EXPECT_LT(g.stokes_det, 1e-8);
  EXPECT_LT(g.liouville, 1e-7);
  EXPECT_LT(g.anchor_independence, 1e-8);
  EXPECT_LT(g.connection_radius_residual, 1e-8);
  EXPECT_LT(g.loop_residual, 1e-8);
  EXPECT_LT(g.cyclic_spectrum, 1e-8);
  EXPECT_LT(g.cyclic_conjugation, 1e-8);
  const auto expected = exp_spectrum({-0.4, 0.0, 0.4});
  EXPECT_LT(multiset_distance(eigenvalues(d.levelt.monodromy), expected), 1e-12);
  EXPECT_LT(multiset_distance(eigenvalues(d.monodromy_zero), expected), 1e-8);
}

TEST(Monodromy, LoopAgreesWithStokesProduct) {
  const MonodromyData d = compute_monodromy_data(h3_U(), h3_V());
  EXPECT_LT(max_abs(d.monodromy_sector0 - stokes_loop(d)), 1e-8);
  EXPECT_LT(max_abs(d.connection_C * d.levelt.monodromy * d.connection_C.inverse() - d.monodromy_sector0) /
                max_abs(d.monodromy_sector0),
            1e-8);
}

TEST(Monodromy, StokesMatricesAreIndependentOfTheWorkerCount) {
  MonodromyOptions serial;
  MonodromyOptions threaded;
  threaded.threads = 4;
  const MonodromyData a = compute_monodromy_data(h3_U(), h3_V(), serial);
  const MonodromyData b = compute_monodromy_data(h3_U(), h3_V(), threaded);
  for (std::size_t nu = 0; nu < a.stokes.size(); ++nu) EXPECT_EQ(max_abs(a.stokes[nu].S - b.stokes[nu].S), 0.0);
}

TEST(Monodromy, FuchsianLoopMatchesMatrixExponential) {
  CMatrix residue = CMatrix::Zero(2, 2);
  residue(0, 0) = 1.0 / 3.0;
  residue(1, 1) = -1.0 / 3.0;
  CMatrix U(2, 2);
  U << 0.5, 0.2, 0.2, -0.1;
  const LeveltData l = levelt_solution(residue, U, 12);
  const LoopResult r = monodromy_at_zero(l, levelt_radius(l));
  EXPECT_LT(r.residual, 1e-9);
  EXPECT_LT(multiset_distance(eigenvalues(r.M_loop), exp_spectrum({1.0 / 3.0, -1.0 / 3.0})), 1e-9);
}

TEST(Monodromy, ResonantLoopMatchesMatrixExponential) {
  CMatrix residue = CMatrix::Zero(2, 2);
  residue(1, 1) = 1.0;
  CMatrix U(2, 2);
  U << 0, 1, 1, 2;
  const LeveltData l = levelt_solution(residue, U, 12);
  ASSERT_TRUE(l.resonant);
  const LoopResult r = monodromy_at_zero(l, levelt_radius(l));
  EXPECT_LT(r.residual, 1e-8);
  // Unipotent with a non-trivial Jordan block.
  EXPECT_GT(max_abs(r.M_loop - CMatrix::Identity(2, 2)), 1e-3);
}

TEST(Monodromy, MatchRadiusMeetsTheTailTarget) {
  const FormalReduction red = formal_reduction(h3_U(), h3_V(), 10);
  const double R = choose_match_radius(red, 1e-12);
  EXPECT_LE(formal_tail_estimate(red, R), 1e-12);
  EXPECT_GT(formal_tail_estimate(red, R / std::pow(10.0, 1.0 / 16.0)), 1e-12);
}

TEST(Monodromy, UnreachableTailIsReported) {
  const FormalReduction red = formal_reduction(h3_U(), 50.0 * h3_V(), 2);
  try {
    choose_match_radius(red, 1e-30, 1e-30);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TailTooLarge);
  }
}

TEST(Monodromy, AngleOnAStokesRayIsRejected) {
  MonodromyOptions o;
  o.phi = kPi / 2;
  EXPECT_THROW(compute_monodromy_data(h3_U(), h3_V(), o), Error);
}
