#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "causticlab/frobenius.hpp"
#include "causticlab/types.hpp"

namespace causticlab {

enum class PointClass { Semisimple, SemisimpleCoalescent, Caustic };

std::string_view to_string(PointClass kind) noexcept;

// prod_{i<j} (l_i - l_j)^2 over the eigenvalues of U(p).
Complex bifurcation_value(const FrobeniusManifold& manifold, const CVector& p);

struct ClassifyOptions {
  double tol = 1e-8;
  std::uint64_t seed = 20240917;
  std::size_t random_probes = 8;
};

struct Classification {
  PointClass kind = PointClass::Semisimple;
  std::vector<Complex> eigenvalues;
  // Smallest scaled squared gap of the eigenvalues of U.
  double min_gap = 0.0;
};

Classification classify_point(const FrobeniusManifold& manifold, const CVector& p,
                              const ClassifyOptions& options = {});

struct CausticFrame {
  CVector point;
  // u_2 (the double eigenvalue) followed by the simple ones in (re, im) order.
  std::vector<Complex> eigenvalues;
  // pi_2, ..., pi_n in flat coordinates.
  std::vector<CVector> idempotents;
  CVector nilpotent;
  CVector normal;
  // Columns N, f_2, ..., f_n in flat coordinates.
  CMatrix frame;
  CMatrix frame_inverse;
  // E∘ (set to its exact diagonal; the discarded part is diagonal_residual)
  // and mu in the frame basis. The sign of N makes Re(2i V(1,0)) >= 0.
  CMatrix U;
  CMatrix V;
  double m = 0.0;

  double orthonormality_residual = 0.0;
  double idempotent_residual = 0.0;
  double nilpotent_residual = 0.0;
  double diagonal_residual = 0.0;
  double tangency_residual = 0.0;
};

struct FrameOptions {
  double cluster_tol = 1e-8;
  double nilpotent_tol = 1e-6;
  double tol = 1e-8;
};

// `tangent` may be empty, in which case tangency_residual stays 0.
CausticFrame caustic_frame(const FrobeniusManifold& manifold, const CVector& p,
                           const std::vector<CVector>& tangent, const FrameOptions& options = {});

struct HertlingM {
  double m = 0.0;
  bool near_integer = false;
};

HertlingM hertling_m(const CMatrix& V, double tol = 1e-10);

struct ApproachFit {
  std::vector<double> t;
  std::vector<double> gaps;
  double slope = 0.0;
  double m = 0.0;
  // RMS of the log-log fit.
  double residual = 0.0;
};

std::vector<double> default_approach_samples();

ApproachFit m_from_approach(const FrobeniusManifold& manifold, const CVector& caustic_point,
                            const CVector& direction, const std::vector<double>& t_samples);

// Flips signs (and reorders the simple idempotent columns) of `frame` so it
// overlaps `previous` as much as possible; U and V follow the change of basis.
void align_frame(CausticFrame& frame, const CausticFrame& previous);

// A curve s -> point on the caustic with its velocity. With the unit flow it
// gives the chart (r, s) -> point(s) + r e of a 2-dimensional caustic.
struct CurveMap {
  std::function<CVector(Complex)> point;
  std::function<CVector(Complex)> velocity;
};

struct IdentityResiduals {
  double exchange = 0.0;  // [E_i, w_j] - [E_j, w_i]
  double residue_derivative = 0.0;  // dV/du_i - [V, w_i]
  double commutator = 0.0;  // [U, w_i] + [E_i, V]
  double eigenvalue_derivative = 0.0;  // dU/du_i - E_i
  double block_curvature = 0.0;
  double v12_derivative = 0.0;

  double max() const;
};

struct IdentityReport {
  std::vector<Complex> s_samples;
  std::vector<IdentityResiduals> per_sample;
  IdentityResiduals worst;
  std::vector<Complex> v12;
  double v12_spread = 0.0;
  double tol = 0.0;
  bool passed = false;
};

// Connection matrices w_i = P^{-1} d_{pi_i} P, i = 2..n, at parameter s.
std::vector<CMatrix> caustic_connection(const FrobeniusManifold& manifold, const CurveMap& curve,
                                        Complex s, double fd_step, const FrameOptions& options = {});

// P^-1 dP/ds along the curve by central differences of frames aligned to the
// frame at s (itself aligned to `reference` when given).
CMatrix frame_derivative_connection(const FrobeniusManifold& manifold, const CurveMap& curve, Complex s,
                                    double fd_step, const CausticFrame* reference = nullptr,
                                    const FrameOptions& options = {});

IdentityReport connection_identities_check(const FrobeniusManifold& manifold, const CurveMap& curve,
                                           const std::vector<Complex>& s_samples, double fd_step,
                                           double tol, const FrameOptions& options = {});

}  // namespace causticlab
