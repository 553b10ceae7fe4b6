#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "causticlab/error.hpp"
#include "causticlab/series.hpp"

using namespace causticlab;

namespace {

const Complex I(0, 1);

// H3 caustic system at s = 1 in its orthonormal frame.
CMatrix h3_U() {
  CMatrix U = CMatrix::Zero(3, 3);
  U(0, 0) = U(1, 1) = -0.7;
  U(2, 2) = 2.5;
  return U;
}

CMatrix h3_V() {
  CMatrix V(3, 3);
  V << 0, 0.3 * I, 0.3, -0.3 * I, 0, -0.4 * I, -0.3, 0.4 * I, 0;
  return V;
}

// Residual of Y = W z^B e^{-Uz} with W = G H0 H from the coefficient lists,
// differentiated term by term.
double ode_residual(const FormalReduction& r, Complex z) {
  const Eigen::Index n = r.U.rows();
  CMatrix G = CMatrix::Identity(n, n), dG = CMatrix::Zero(n, n);
  for (std::size_t k = 1; k <= r.order; ++k) {
    const double kk = static_cast<double>(k);
    G += r.G[k - 1] * std::pow(z, -kk);
    dG += -kk * r.G[k - 1] * std::pow(z, -kk - 1.0);
  }
  CMatrix H = CMatrix::Identity(n, n), dH = CMatrix::Zero(n, n);
  for (std::size_t k = 1; k <= r.order; ++k) {
    const double kk = static_cast<double>(k);
    H += r.H[k - 1] * std::pow(z, -kk);
    dH += -kk * r.H[k - 1] * std::pow(z, -kk - 1.0);
  }
  const CMatrix W = G * r.H0 * H;
  const CMatrix dW = dG * r.H0 * H + G * r.H0 * dH;
  const CMatrix res = dW + W * r.B_exp / z - W * r.U - (r.V / z - r.U) * W;
  return max_abs(res * W.inverse());
}

}  // namespace

TEST(FormalReduction, ExponentIsPlusMinusModulusOfV12) {
  const FormalReduction r = formal_reduction(h3_U(), h3_V(), 6);
  EXPECT_TRUE(r.coalescent);
  // diag(i V12, -i V12, 0) with V12 = 0.3 i.
  EXPECT_LT(std::abs(r.B_exp(0, 0) - (-0.3)), 1e-12);
  EXPECT_LT(std::abs(r.B_exp(1, 1) - 0.3), 1e-12);
  EXPECT_LT(std::abs(r.B_exp(2, 2)), 1e-12);
  CMatrix off = r.B_exp;
  off.diagonal().setZero();
  EXPECT_LT(max_abs(off), 1e-14);
}

TEST(FormalReduction, RecursionIsSatisfiedAtEveryOrder) {
  const FormalReduction r = formal_reduction(h3_U(), h3_V(), 10);
  for (std::size_t k = 1; k <= 10; ++k) EXPECT_LT(r.recursion_residual(k), 1e-12) << "k=" << k;
}

TEST(FormalReduction, ResidualDecaysLikeTheTruncationOrderInDoublePrecision) {
  const FormalReduction r = formal_reduction(h3_U(), h3_V(), 4);
  const double a = std::log(ode_residual(r, 20.0 * I));
  const double b = std::log(ode_residual(r, 80.0 * I));
  const double slope = (b - a) / std::log(4.0);
  EXPECT_NEAR(slope, -5.0, 0.5);
}

TEST(FormalReduction, ExtendedPrecisionResidualSlopes) {
  for (const std::size_t K : {4u, 8u}) {
    const FormalReduction r = formal_reduction(h3_U(), h3_V(), K);
    std::vector<double> lx, ly;
    for (const double R : {20.0, 40.0, 80.0}) {
      lx.push_back(std::log(R));
      ly.push_back(std::log(formal_residual(r, R * I)));
    }
    const double slope = (ly[2] - ly[0]) / (lx[2] - lx[0]);
    EXPECT_NEAR(slope, -(static_cast<double>(K) + 1.0), 0.5) << "K=" << K;
  }
}

TEST(FormalReduction, BlockSeriesWithoutCoalescenceKeepsDiagonalOnly) {
  CMatrix U = CMatrix::Zero(2, 2);
  U(1, 1) = 1.0;
  CMatrix V(2, 2);
  V << 0, 0.2, -0.2, 0;
  const BlockSeries b = block_diagonalize_formal(U, V, 3);
  EXPECT_FALSE(b.coalescent);
  for (const auto& B : b.B) EXPECT_LT(std::abs(B(0, 1)) + std::abs(B(1, 0)), 1e-15);
  // [U, G1] = -V off the diagonal: G1_01 = V_01 / (u_0 - u_1).
  EXPECT_LT(std::abs(b.G[0](0, 1) - V(0, 1) / (U(0, 0) - U(1, 1))), 1e-14);
}

TEST(FormalReduction, ZeroResidueEntryCannotBeDiagonalized) {
  try {
    diagonalize_residue(0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroResidue);
  }
  const ResidueDiagonalization d = diagonalize_residue(0.3 * I);
  const Eigen::Matrix2cd B1 = (Eigen::Matrix2cd() << 0, 0.3 * I, -0.3 * I, 0).finished();
  const Eigen::Matrix2cd D = d.H0_block.inverse() * B1 * d.H0_block;
  EXPECT_LT(std::abs(D(0, 0) - d.b1) + std::abs(D(1, 1) - d.b2) + std::abs(D(0, 1)) + std::abs(D(1, 0)), 1e-14);
}

TEST(FormalReduction, SmallDivisorIsReported) {
  CMatrix U = CMatrix::Zero(3, 3);
  U(2, 2) = 1e-14;
  try {
    formal_reduction(U, h3_V(), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SmallDivisor);
  }
}

TEST(Levelt, SpectrumAndIntegerSplit) {
  const LeveltData d = levelt_solution(h3_V(), h3_U(), 12);
  EXPECT_FALSE(d.resonant);
  std::vector<Complex> mu;
  for (Eigen::Index i = 0; i < 3; ++i) mu.push_back(d.J(i, i));
  EXPECT_LT(multiset_distance(mu, {-0.4, 0.0, 0.4}), 1e-12);
  for (Eigen::Index i = 0; i < 3; ++i) {
    EXPECT_NEAR(d.D(i, i).real(), std::round(d.D(i, i).real()), 1e-14);
    EXPECT_GT(d.S(i, i).real(), -1e-14);
    EXPECT_LT(d.S(i, i).real(), 1.0);
    EXPECT_LT(std::abs(d.D(i, i) + d.S(i, i) - d.J(i, i)), 1e-14);
  }
  // exp(2 pi i mu) oracle.
  std::vector<Complex> expected;
  for (const double m : {-0.4, 0.0, 0.4}) expected.push_back(std::exp(2.0 * std::numbers::pi * I * m));
  Eigen::ComplexEigenSolver<CMatrix> es(d.monodromy);
  EXPECT_LT(multiset_distance({es.eigenvalues().data(), es.eigenvalues().data() + 3}, expected), 1e-12);
}

TEST(Levelt, ResidualShrinksLikeZToTheOrder) {
  const LeveltData d = levelt_solution(h3_V(), h3_U(), 4);
  const double r1 = levelt_residual(d, 0.2);
  const double r2 = levelt_residual(d, 0.1);
  EXPECT_GT(r1 / r2, 8.0);
  EXPECT_LT(r2, 1e-2);
}

TEST(Levelt, NonDiagonalizableResidueIsRejected) {
  CMatrix N = CMatrix::Zero(2, 2);
  N(0, 1) = 1.0;
  try {
    levelt_solution(N, CMatrix::Identity(2, 2), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonDiagonalizableResidue);
  }
}

TEST(Levelt, ResonanceMovesIntoR) {
  CMatrix residue = CMatrix::Zero(2, 2);
  residue(1, 1) = 1.0;
  CMatrix U(2, 2);
  U << 0, 1, 1, 2;
  const LeveltData d = levelt_solution(residue, U, 8);
  EXPECT_TRUE(d.resonant);
  EXPECT_GT(max_abs(d.R), 0.1);
  EXPECT_LT(levelt_residual(d, 0.05), 1e-8);
}
