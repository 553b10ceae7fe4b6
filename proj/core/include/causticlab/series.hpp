#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "causticlab/types.hpp"

namespace causticlab {

// Formal solution Y_F = G(z) H0 H(z) z^B exp(-U z) of dY/dz = (V/z - U) Y at
// z = infinity, with G(z) = Id + sum G_k z^-k and H(z) = Id + sum H_k z^-k.
struct FormalReduction {
  CMatrix U;
  CMatrix V;
  std::size_t order = 0;
  // True when u_1 = u_2 and the top-left 2x2 block is kept.
  bool coalescent = false;
  std::vector<CMatrix> G;  // G[k-1] = G_k
  std::vector<CMatrix> B;  // B[k-1] = B_k
  CMatrix H0;
  std::vector<CMatrix> B_hat;  // H0^-1 B_k H0
  std::vector<CMatrix> H;  // H[k-1] = H_k
  CMatrix B_exp;

  // Max-norm of -[U,G_k] + (k-1)G_{k-1} + V G_{k-1} - sum G_{k-s} B_s - B_k.
  double recursion_residual(std::size_t k) const;
};

struct BlockSeries {
  std::vector<CMatrix> G;
  std::vector<CMatrix> B;
  bool coalescent = false;
};

// Solves the G_k / B_k recursion up to order K. U must be diagonal; when its
// first two entries agree they form the kept block.
BlockSeries block_diagonalize_formal(const CMatrix& U, const CMatrix& V, std::size_t K);

struct ResidueDiagonalization {
  Eigen::Matrix2cd H0_block;
  Complex b1;  // i V12
  Complex b2;  // -i V12
};

ResidueDiagonalization diagonalize_residue(Complex V12);

// H_k from [B, H_k] + k H_k = -B^_{k+1} - sum_{l=1}^{k-1} B^_{k+1-l} H_l with
// B^_k = H0^-1 B_k H0 and B = B^_1 diagonal.
std::vector<CMatrix> reduce_to_euler_form(const std::vector<CMatrix>& B, const CMatrix& H0, std::size_t K);

FormalReduction formal_reduction(const CMatrix& U, const CMatrix& V, std::size_t K = 10);

// G(z) H0 H(z).
CMatrix formal_gauge_eval(const FormalReduction& reduction, Complex z);

// z^B uses log z = ln|z| + i arg, with arg chosen by the caller.
CMatrix formal_solution_eval(const FormalReduction& reduction, Complex z, double arg);
CMatrix formal_solution_eval(const FormalReduction& reduction, Complex z);

// max(|G_K|, |H_K|) R^-K, the optimal-truncation tail estimate.
double formal_tail_estimate(const FormalReduction& reduction, double R);

// |(W' + W B/z - W U - (V/z - U) W) W^-1| for W = G H0 H, evaluated in
// extended precision from a recursion redone in extended precision.
double formal_residual(const FormalReduction& reduction, Complex z);

// Levelt form Y_L = T(z) z^D z^(R+S) at z = 0.
struct LeveltData {
  CMatrix residue;
  CMatrix U;
  std::vector<CMatrix> T;  // T[0] = T_0
  CMatrix J;  // diagonal T_0^-1 residue T_0
  CMatrix D;
  CMatrix S;
  CMatrix R;
  std::vector<CMatrix> R_terms;  // R_terms[k-1] = R_k
  CMatrix monodromy;  // exp(2 pi i (R + S))
  bool resonant = false;
};

// With no T0 the eigenvectors of the residue are used, each scaled to make
// its first non-negligible entry 1.
LeveltData levelt_solution(const CMatrix& residue, const CMatrix& U, std::size_t K_levelt = 12,
                           const std::optional<CMatrix>& T0 = std::nullopt);

CMatrix levelt_T(const LeveltData& data, Complex z);

// T(z) z^D z^(R+S) with log z = ln|z| + i arg.
CMatrix levelt_eval(const LeveltData& data, Complex z, double arg);

// |(Y' - (residue/z - U) Y) Y^-1| for the truncated Levelt solution.
double levelt_residual(const LeveltData& data, Complex z);

}  // namespace causticlab
