#include "causticlab/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace causticlab {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a -= 2.0 * kPi;
  return a;
}

}  // namespace

std::vector<double> stokes_rays(const std::vector<Complex>& u, double tol) {
  std::vector<double> rays;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const Complex d = u[i] - u[j];
      if (std::abs(d) <= tol) continue;
      rays.push_back(wrap(kPi / 2.0 - std::arg(d)));
      rays.push_back(wrap(-kPi / 2.0 - std::arg(d)));
    }
  std::sort(rays.begin(), rays.end());
  std::vector<double> out;
  for (double r : rays)
    if (out.empty() || r - out.back() > 1e-12) out.push_back(r);
  if (out.size() > 1 && out.front() + 2.0 * kPi - out.back() <= 1e-12) out.pop_back();
  return out;
}

double SectorConfig::lower(int nu) const { return phi - kPi - eps + nu * kPi; }
double SectorConfig::upper(int nu) const { return phi + eps + nu * kPi; }
double SectorConfig::mid_arg(int nu) const { return phi - kPi / 2.0 + nu * kPi; }
double SectorConfig::overlap_arg(int nu) const { return phi + nu * kPi; }

SectorConfig admissible_angle(const std::vector<double>& rays) {
  SectorConfig cfg;
  cfg.stokes_rays = rays;
  if (rays.empty()) {
    cfg.phi = 0.0;
    cfg.eps = kPi / 12.0;
    return cfg;
  }
  std::vector<double> r = rays;
  std::sort(r.begin(), r.end());
  double best_gap = -1.0;
  double best_mid = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double next = (i + 1 < r.size()) ? r[i + 1] : r.front() + 2.0 * kPi;
    const double gap = next - r[i];
    if (gap > best_gap + 1e-12) {
      best_gap = gap;
      best_mid = r[i] + gap / 2.0;
    }
  }
  cfg.phi = std::fmod(wrap(best_mid), kPi);
  cfg.eps = std::min(best_gap / 4.0, kPi / 12.0);
  return cfg;
}

double ray_clearance(double phi, const std::vector<double>& rays) {
  double best = kPi;
  for (double r : rays) {
    double d = std::fmod(std::abs(wrap(phi) - r), kPi);
    best = std::min({best, d, kPi - d});
  }
  return best;
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> dominance_pattern(const std::vector<Complex>& u,
                                                                      double overlap_arg, double tol) {
  const auto n = static_cast<Eigen::Index>(u.size());
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed(n, n);
  const Complex dir = std::polar(1.0, overlap_arg);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const Complex d = u[static_cast<std::size_t>(a)] - u[static_cast<std::size_t>(b)];
      allowed(a, b) = a != b && std::abs(d) > tol && (d * dir).real() > 0.0;
    }
  return allowed;
}

double pattern_violation(const CMatrix& S, const std::vector<Complex>& u, double overlap_arg, double tol) {
  const auto allowed = dominance_pattern(u, overlap_arg, tol);
  double worst = 0.0;
  for (Eigen::Index a = 0; a < S.rows(); ++a)
    for (Eigen::Index b = 0; b < S.cols(); ++b) {
      if (allowed(a, b)) continue;
      const Complex target = (a == b) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(S(a, b) - target));
    }
  return worst;
}

}  // namespace causticlab
