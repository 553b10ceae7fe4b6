#include "causticlab/integrate.hpp"

#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "causticlab/error.hpp"

namespace causticlab {

namespace odeint = boost::numeric::odeint;

Path::Path(Complex start, double start_arg)
    : start_(start), start_arg_(start_arg), end_(start), end_arg_(start_arg) {
  if (std::abs(start) == 0.0) throw Error(ErrorCode::InvalidArgument, "path may not start at z = 0");
}

Path Path::from_polar(double radius, double arg) { return Path(std::polar(radius, arg), arg); }

Path& Path::line_to(Complex z) {
  const Complex a = end_;
  const Complex d = z - a;
  // Closest approach of the segment to the origin.
  double t = std::norm(d) > 0.0 ? -(std::conj(d) * a).real() / std::norm(d) : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  if (std::abs(a + t * d) < 1e-14 * std::max(1.0, std::abs(a)))
    throw Error(ErrorCode::InvalidArgument, "path segment passes through z = 0");
  Segment s{Segment::Kind::Line, a, z};
  s.arg_from = end_arg_;
  s.arg_to = end_arg_ + std::arg(z / a);
  segments_.push_back(s);
  end_ = z;
  end_arg_ = s.arg_to;
  return *this;
}

Path& Path::ray_to(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "ray target radius must be positive");
  return line_to(std::polar(radius, end_arg_));
}

Path& Path::arc_to(double arg) {
  const double r = std::abs(end_);
  Segment s{Segment::Kind::Arc, end_, std::polar(r, arg)};
  s.radius = r;
  s.arg_from = end_arg_;
  s.arg_to = arg;
  segments_.push_back(s);
  end_ = s.to;
  end_arg_ = arg;
  return *this;
}

namespace {

using State = std::vector<Complex>;

struct Piece {
  Path::Segment::Kind kind;
  Complex from, to;
  double radius, arg_from, arg_to;

  Complex z(double tau) const {
    if (kind == Path::Segment::Kind::Line) return from + tau * (to - from);
    return std::polar(radius, arg_from + tau * (arg_to - arg_from));
  }
  Complex dz(double tau) const {
    if (kind == Path::Segment::Kind::Line) return to - from;
    return kI * (arg_to - arg_from) * z(tau);
  }
};

bool finite(const State& s) {
  for (const auto& c : s)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace

IntegrationResult integrate(const MatrixField& A, const Path& path, const CMatrix& Y0,
                            const IntegrateOptions& options) {
  const Eigen::Index rows = Y0.rows();
  const Eigen::Index cols = Y0.cols();
  const auto count = static_cast<std::size_t>(rows * cols);

  std::vector<Piece> pieces;
  for (const auto& s : path.segments()) {
    if (s.kind == Path::Segment::Kind::Line) {
      pieces.push_back({s.kind, s.from, s.to, 0.0, s.arg_from, s.arg_to});
      continue;
    }
    const double span = s.arg_to - s.arg_from;
    const auto parts = static_cast<int>(std::max(1.0, std::ceil(std::abs(span) / options.max_arc)));
    for (int k = 0; k < parts; ++k) {
      const double a0 = s.arg_from + span * k / parts;
      const double a1 = s.arg_from + span * (k + 1) / parts;
      pieces.push_back({s.kind, std::polar(s.radius, a0), std::polar(s.radius, a1), s.radius, a0, a1});
    }
  }

  // Column-major Y followed by int tr A dz.
  State state(count + 1);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) state[static_cast<std::size_t>(j * rows + i)] = Y0(i, j);
  state[count] = 0.0;

  IntegrationResult result;
  for (const Piece& piece : pieces) {
    auto stepper = odeint::make_controlled(options.atol, options.rtol, odeint::runge_kutta_dopri5<State>());
    auto rhs = [&](const State& x, State& dxdt, double tau) {
      const CMatrix a = A(piece.z(tau)) * piece.dz(tau);
      Eigen::Map<const CMatrix> Y(x.data(), rows, cols);
      Eigen::Map<CMatrix> dY(dxdt.data(), rows, cols);
      dY.noalias() = a * Y;
      dxdt[count] = a.trace();
    };
    double tau = 0.0;
    double dt = 1.0 / 16.0;
    while (tau < 1.0) {
      if (tau + dt > 1.0) dt = 1.0 - tau;
      const auto outcome = stepper.try_step(rhs, state, tau, dt);
      if (++result.steps > options.max_steps)
        throw Error(ErrorCode::StepUnderflow, "step budget exhausted near z = " +
                                                  format_number(std::abs(piece.z(tau))) + " in modulus");
      if (outcome == odeint::fail) {
        if (dt < options.min_step)
          throw Error(ErrorCode::StepUnderflow, "step size underflow near |z| = " +
                                                    format_number(std::abs(piece.z(tau))));
        continue;
      }
      if (!finite(state)) throw Error(ErrorCode::NonFiniteValue, "solution is no longer finite");
    }
  }

  result.Y.resize(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) result.Y(i, j) = state[static_cast<std::size_t>(j * rows + i)];
  result.end_arg = path.end_arg();
  if (rows == cols && rows > 0) {
    const Complex predicted = Y0.determinant() * std::exp(state[count]);
    result.liouville_residual = std::abs(result.Y.determinant() - predicted) / std::max(std::abs(predicted), 1e-300);
  }
  return result;
}

}  // namespace causticlab
