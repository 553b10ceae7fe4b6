#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "causticlab/integrate.hpp"
#include "causticlab/sectors.hpp"
#include "causticlab/series.hpp"
#include "causticlab/types.hpp"

namespace causticlab {

// Smallest radius on a log grid (1 .. 1e4) whose tail estimate is below
// `target`. Throws TailTooLarge when even the best grid radius exceeds
// `tail_tol`.
double choose_match_radius(const FormalReduction& reduction, double target = 1e-12, double tail_tol = 1e-7);

// Canonical solution on S_nu: anchored to the formal solution at
// R_match e^{i mid_arg(nu)}, continued numerically.
class CanonicalSolution {
 public:
  CanonicalSolution(const FormalReduction& reduction, const SectorConfig& sectors, int nu, double match_radius,
                    const IntegrateOptions& options = {}, const std::optional<CMatrix>& column_scaling = std::nullopt);

  int nu() const { return nu_; }
  double anchor_radius() const { return radius_; }
  double anchor_arg() const { return arg_; }
  const CMatrix& anchor_value() const { return anchor_; }

  // Ray from the anchor to `radius`, then arc to `arg` (unreduced, inside
  // the sector).
  IntegrationResult evaluate(double radius, double arg) const;

  // Continues from (radius, arg) along a full counterclockwise circle.
  IntegrationResult loop(double radius, double arg) const;

 private:
  MatrixField field_;
  IntegrateOptions options_;
  int nu_;
  double radius_;
  double arg_;
  CMatrix anchor_;
};

MatrixField system_field(const CMatrix& U, const CMatrix& V);

struct StokesResult {
  int nu = 0;
  double overlap_arg = 0.0;
  CMatrix S;
  // Largest pairwise deviation between per-point estimates.
  double consistency = 0.0;
  double pattern_violation = 0.0;
  double det_residual = 0.0;
};

struct OverlapPoint {
  double radius;
  double arg;
};

// S_nu = Y_nu^-1 Y_{nu+1}, averaged over the points.
StokesResult stokes_matrix(const CanonicalSolution& Y_nu, const CanonicalSolution& Y_next,
                           const std::vector<OverlapPoint>& points, double overlap_tol);

struct LoopResult {
  CMatrix M_loop;
  // |M_loop - exp(2 pi i (R + S))|.
  double residual = 0.0;
  double liouville = 0.0;
};

// Radius where the Levelt series tail drops below `tail`.
double levelt_radius(const LeveltData& levelt, double tail = 1e-15);

LoopResult monodromy_at_zero(const LeveltData& levelt, double r0, const IntegrateOptions& options = {});

struct ConnectionResult {
  CMatrix C;
  // |C(z_match) - C(z_match / 2)|.
  double radius_residual = 0.0;
  double liouville = 0.0;
};

// C = Y_0(z)^-1 Y_L(z) at z_match and z_match / 2 on the ray arg_match.
ConnectionResult connection_matrix(const CanonicalSolution& Y0, const LeveltData& levelt, double match_radius,
                                   double arg_match, const IntegrateOptions& options = {});

struct MonodromyOptions {
  std::size_t order = 10;
  std::size_t levelt_order = 12;
  double rtol = 1e-10;
  double atol = 1e-10;
  double anchor_tail = 1e-12;
  double tail_tol = 1e-7;
  // Frozen admissible angle; computed from the eigenvalues when unset.
  std::optional<double> phi;
  std::optional<double> eps;
  std::optional<CMatrix> levelt_T0;
  // Right factor applied to every canonical solution.
  std::optional<CMatrix> column_scaling;
  // Radius for overlap and connection points; 1 / max|u_i - u_j| when unset.
  std::optional<double> inner_radius;
  // Also anchor Y_0 at 1.5 R_match and compare.
  bool check_anchor = true;
  unsigned threads = 1;
};

struct MonodromyDiagnostics {
  double match_radius = 0.0;
  double tail_estimate = 0.0;
  double inner_radius = 0.0;
  double levelt_radius = 0.0;
  double liouville = 0.0;
  double anchor_independence = 0.0;
  double connection_radius_residual = 0.0;
  double loop_residual = 0.0;
  // Spectrum of the continuation of Y_0 around 0 against exp(2 pi i mu).
  double cyclic_spectrum = 0.0;
  // |M_0 - C M~ C^-1|.
  double cyclic_conjugation = 0.0;
  double stokes_consistency = 0.0;
  double stokes_pattern = 0.0;
  double stokes_det = 0.0;
};

struct MonodromyData {
  CMatrix U;
  CMatrix V;
  SectorConfig sectors;
  CMatrix B_exp;
  std::vector<StokesResult> stokes;
  LeveltData levelt;
  CMatrix connection_C;
  CMatrix monodromy_zero;
  CMatrix monodromy_sector0;
  MonodromyDiagnostics diagnostics;
};

// U diagonal, V antisymmetric, both in the same basis.
MonodromyData compute_monodromy_data(const CMatrix& U, const CMatrix& V, const MonodromyOptions& options = {});

}  // namespace causticlab
