#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "causticlab/types.hpp"

namespace causticlab {

using MatrixField = std::function<CMatrix(Complex z)>;

// Polyline/arc path in the punctured plane with a continuously tracked
// argument.
class Path {
 public:
  struct Segment {
    enum class Kind { Line, Arc } kind;
    Complex from;
    Complex to;
    double radius = 0.0;
    double arg_from = 0.0;
    double arg_to = 0.0;
  };

  // Starts at `start` with argument `start_arg` (which must agree with
  // arg(start) modulo 2 pi).
  Path(Complex start, double start_arg);
  static Path from_polar(double radius, double arg);

  Path& line_to(Complex z);
  // Radial leg to modulus `radius` at the current argument.
  Path& ray_to(double radius);
  // Circular arc at the current modulus to argument `arg` (not reduced).
  Path& arc_to(double arg);

  Complex start() const { return start_; }
  double start_arg() const { return start_arg_; }
  Complex end() const { return end_; }
  double end_arg() const { return end_arg_; }
  const std::vector<Segment>& segments() const { return segments_; }

 private:
  Complex start_;
  double start_arg_;
  Complex end_;
  double end_arg_;
  std::vector<Segment> segments_;
};

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double min_step = 1e-13;
  std::size_t max_steps = 2000000;
  // Arcs are split into pieces of at most this angle.
  double max_arc = 3.14159265358979323846 / 16.0;
};

struct IntegrationResult {
  CMatrix Y;
  double end_arg = 0.0;
  std::size_t steps = 0;
  // |det Y - det Y0 exp(int tr A dz)| relative to the predicted value.
  double liouville_residual = 0.0;
};

// Solves dY/dz = A(z) Y along the path with an adaptive Dormand-Prince 5(4)
// stepper.
IntegrationResult integrate(const MatrixField& A, const Path& path, const CMatrix& Y0,
                            const IntegrateOptions& options = {});

}  // namespace causticlab
