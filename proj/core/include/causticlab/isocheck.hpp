#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "causticlab/caustic.hpp"
#include "causticlab/frobenius.hpp"
#include "causticlab/monodromy.hpp"
#include "causticlab/poly.hpp"

namespace causticlab {

// A curve on the caustic, each coordinate a polynomial in the single
// variable s.
struct CausticCurve {
  std::string name;
  std::vector<MultiPoly> param;
  // n - 1 tangent vectors of the caustic along the curve; when empty the unit
  // direction and d param / ds are used.
  std::vector<std::vector<MultiPoly>> tangent;
  double s_begin = 0.0;
  double s_end = 1.0;
  std::size_t samples = 5;

  CVector point(Complex s) const;
  CVector velocity(Complex s) const;
  std::vector<CVector> tangents(Complex s, std::size_t unit_index) const;
  CurveMap curve_map() const;
  std::vector<double> sample_parameters() const;
};

struct CurveSample {
  double s = 0.0;
  CVector point;
  CausticFrame frame;
};

// Frames along the curve, each aligned to its predecessor. Errors carry the
// offending s in their message.
std::vector<CurveSample> sample_curve(const FrobeniusManifold& manifold, const CausticCurve& curve,
                                      const FrameOptions& options = {});

struct ConstancyThresholds {
  double algebraic = 1e-10;
  double stokes = 1e-6;
  double spectrum = 1e-8;
  double connection = 1e-6;
  double m = 1e-8;
};

struct IsocheckOptions {
  MonodromyOptions monodromy;
  FrameOptions frame;
  ConstancyThresholds thresholds;
  // Step for d frame / ds.
  double fd_step = 1e-4;
  // Rotate the coalescent block by the integrated connection and use the
  // frame inverse as Levelt T_0.
  bool flat_gauge = true;
  unsigned threads = 1;
};

struct Deviations {
  double B_exp = 0.0;
  double stokes = 0.0;
  double spectrum = 0.0;
  double connection = 0.0;
  double m = 0.0;
};

// Samples [first, last] sharing one frozen admissible angle.
struct SubRange {
  std::size_t first = 0;
  std::size_t last = 0;
  double phi = 0.0;
  double eps = 0.0;
  Deviations deviations;
};

struct ConstancyReport {
  std::string curve;
  std::vector<CurveSample> samples;
  // Integrated connection angle of the coalescent block per sample.
  std::vector<Complex> theta;
  std::vector<MonodromyData> data;
  std::vector<SubRange> subranges;
  Deviations max_deviation;
  ConstancyThresholds thresholds;
  bool admissibility_break = false;
  bool passed = false;
};

ConstancyReport constancy_report(const FrobeniusManifold& manifold, const std::vector<CurveSample>& samples,
                                 const CurveMap& curve, const IsocheckOptions& options = {});

ConstancyReport isocheck(const FrobeniusManifold& manifold, const CausticCurve& curve,
                         const IsocheckOptions& options = {});

}  // namespace causticlab
