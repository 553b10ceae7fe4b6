#pragma once

#include <vector>

#include "causticlab/types.hpp"

namespace causticlab {

// Angles in [0, 2 pi) where Re(z (u_i - u_j)) = 0 for u_i != u_j, sorted and
// deduplicated.
std::vector<double> stokes_rays(const std::vector<Complex>& u, double tol = 1e-10);

// S_nu = { arg z in (phi - pi - eps + nu pi, phi + eps + nu pi) }.
struct SectorConfig {
  double phi = 0.0;
  double eps = 0.0;
  std::vector<double> stokes_rays;
  int nu_min = 0;
  int nu_max = 1;

  double lower(int nu) const;
  double upper(int nu) const;
  double mid_arg(int nu) const;
  // Centre of S_nu ∩ S_{nu+1}.
  double overlap_arg(int nu) const;
};

// phi at the midpoint of the largest gap of the ray arrangement, reduced to
// [0, pi); eps = min(gap / 4, pi / 12).
SectorConfig admissible_angle(const std::vector<double>& rays);

// Smallest angular distance from phi (as a line) to any ray.
double ray_clearance(double phi, const std::vector<double>& rays);

// allowed(a, b) for a != b: the Stokes matrix of the overlap centred at
// `overlap_arg` may have a non-zero (a, b) entry.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> dominance_pattern(const std::vector<Complex>& u,
                                                                      double overlap_arg, double tol = 1e-10);

// Largest |S(a, b) - delta_ab| over entries outside the dominance pattern.
double pattern_violation(const CMatrix& S, const std::vector<Complex>& u, double overlap_arg,
                         double tol = 1e-10);

}  // namespace causticlab
