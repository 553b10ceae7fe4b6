#include "causticlab/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "causticlab/error.hpp"
#include "causticlab/parallel.hpp"

namespace causticlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> diagonal_of(const CMatrix& U) {
  std::vector<Complex> u;
  for (Eigen::Index i = 0; i < U.rows(); ++i) u.push_back(U(i, i));
  return u;
}

std::vector<Complex> eigenvalues_of(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

}  // namespace

MatrixField system_field(const CMatrix& U, const CMatrix& V) {
  return [U, V](Complex z) -> CMatrix { return V / z - U; };
}

double choose_match_radius(const FormalReduction& reduction, double target, double tail_tol) {
  double best_radius = 1.0;
  double best_tail = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 64; ++k) {
    const double R = std::pow(10.0, k / 16.0);
    const double tail = formal_tail_estimate(reduction, R);
    if (tail < best_tail) {
      best_tail = tail;
      best_radius = R;
    }
    if (tail <= target) return R;
  }
  if (best_tail > tail_tol)
    throw Error(ErrorCode::TailTooLarge, "formal tail estimate " + format_number(best_tail) +
                                             " exceeds " + format_number(tail_tol));
  return best_radius;
}

CanonicalSolution::CanonicalSolution(const FormalReduction& reduction, const SectorConfig& sectors, int nu,
                                     double match_radius, const IntegrateOptions& options,
                                     const std::optional<CMatrix>& column_scaling)
    : field_(system_field(reduction.U, reduction.V)),
      options_(options),
      nu_(nu),
      radius_(match_radius),
      arg_(sectors.mid_arg(nu)) {
  anchor_ = formal_solution_eval(reduction, std::polar(radius_, arg_), arg_);
  if (column_scaling) anchor_ = anchor_ * *column_scaling;
}

IntegrationResult CanonicalSolution::evaluate(double radius, double arg) const {
  Path path = Path::from_polar(radius_, arg_);
  if (std::abs(radius - radius_) > 0.0) path.ray_to(radius);
  if (std::abs(arg - arg_) > 0.0) path.arc_to(arg);
  if (path.segments().empty()) {
    IntegrationResult r;
    r.Y = anchor_;
    r.end_arg = arg_;
    return r;
  }
  return integrate(field_, path, anchor_, options_);
}

IntegrationResult CanonicalSolution::loop(double radius, double arg) const {
  const IntegrationResult start = evaluate(radius, arg);
  Path path = Path::from_polar(radius, arg);
  path.arc_to(arg + 2.0 * kPi);
  IntegrationResult r = integrate(field_, path, start.Y, options_);
  r.liouville_residual = std::max(r.liouville_residual, start.liouville_residual);
  return r;
}

StokesResult stokes_matrix(const CanonicalSolution& Y_nu, const CanonicalSolution& Y_next,
                           const std::vector<OverlapPoint>& points, double overlap_tol) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "no overlap points");
  StokesResult out;
  out.nu = Y_nu.nu();
  std::vector<CMatrix> estimates;
  for (const auto& p : points) {
    const CMatrix a = Y_nu.evaluate(p.radius, p.arg).Y;
    const CMatrix b = Y_next.evaluate(p.radius, p.arg).Y;
    estimates.push_back(a.partialPivLu().solve(b));
  }
  out.S = CMatrix::Zero(estimates.front().rows(), estimates.front().cols());
  for (const auto& e : estimates) out.S += e;
  out.S /= static_cast<double>(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i)
    for (std::size_t j = i + 1; j < estimates.size(); ++j)
      out.consistency = std::max(out.consistency, max_abs(estimates[i] - estimates[j]));
  out.det_residual = std::abs(out.S.determinant() - 1.0);
  if (out.consistency > overlap_tol)
    throw Error(ErrorCode::InconsistentOverlap, "Stokes estimates differ by " + format_number(out.consistency));
  return out;
}

double levelt_radius(const LeveltData& levelt, double tail) {
  const std::size_t K = levelt.T.size() - 1;
  if (K == 0) return 1.0;
  const double top = max_abs(levelt.T.back());
  if (top == 0.0) return 1.0;
  return std::min(1.0, std::pow(tail / top, 1.0 / static_cast<double>(K)));
}

LoopResult monodromy_at_zero(const LeveltData& levelt, double r0, const IntegrateOptions& options) {
  const CMatrix start = levelt_eval(levelt, r0, 0.0);
  Path path = Path::from_polar(r0, 0.0);
  path.arc_to(2.0 * kPi);
  const IntegrationResult end = integrate(system_field(levelt.U, levelt.residue), path, start, options);
  LoopResult out;
  out.M_loop = start.partialPivLu().solve(end.Y);
  out.residual = max_abs(out.M_loop - levelt.monodromy);
  out.liouville = end.liouville_residual;
  return out;
}

ConnectionResult connection_matrix(const CanonicalSolution& Y0, const LeveltData& levelt, double match_radius,
                                   double arg_match, const IntegrateOptions& options) {
  const double r0 = std::min(levelt_radius(levelt), match_radius / 4.0);
  const MatrixField field = system_field(levelt.U, levelt.residue);
  const CMatrix start = levelt_eval(levelt, std::polar(r0, arg_match), arg_match);

  Path inner = Path::from_polar(r0, arg_match);
  inner.ray_to(match_radius / 2.0);
  const IntegrationResult yl_half = integrate(field, inner, start, options);
  Path outer = Path::from_polar(match_radius / 2.0, arg_match);
  outer.ray_to(match_radius);
  const IntegrationResult yl_full = integrate(field, outer, yl_half.Y, options);

  const IntegrationResult y0_half = Y0.evaluate(match_radius / 2.0, arg_match);
  const IntegrationResult y0_full = Y0.evaluate(match_radius, arg_match);
  ConnectionResult out;
  out.C = y0_full.Y.partialPivLu().solve(yl_full.Y);
  const CMatrix C_half = y0_half.Y.partialPivLu().solve(yl_half.Y);
  out.radius_residual = max_abs(out.C - C_half);
  out.liouville = std::max({yl_half.liouville_residual, yl_full.liouville_residual, y0_half.liouville_residual,
                            y0_full.liouville_residual});
  return out;
}

MonodromyData compute_monodromy_data(const CMatrix& U, const CMatrix& V, const MonodromyOptions& options) {
  MonodromyData data;
  data.U = U;
  data.V = V;
  const std::vector<Complex> u = diagonal_of(U);
  const auto rays = stokes_rays(u);
  data.sectors = admissible_angle(rays);
  if (options.phi) {
    data.sectors.phi = *options.phi;
    const double clearance = ray_clearance(*options.phi, rays);
    if (clearance < 1e-6)
      throw Error(ErrorCode::InvalidArgument, "frozen angle lies on a Stokes ray");
    data.sectors.eps = options.eps ? *options.eps : std::min(clearance / 2.0, kPi / 12.0);
  }
  const SectorConfig& sectors = data.sectors;

  const FormalReduction reduction = formal_reduction(U, V, options.order);
  data.B_exp = reduction.B_exp;
  auto& diag = data.diagnostics;
  diag.match_radius = choose_match_radius(reduction, options.anchor_tail, options.tail_tol);
  diag.tail_estimate = formal_tail_estimate(reduction, diag.match_radius);

  double max_gap = 0.0;
  for (const auto& a : u)
    for (const auto& b : u) max_gap = std::max(max_gap, std::abs(a - b));
  diag.inner_radius = options.inner_radius ? *options.inner_radius : (max_gap > 0.0 ? 1.0 / max_gap : 1.0);
  diag.inner_radius = std::min(diag.inner_radius, diag.match_radius / 4.0);
  const double rc = diag.inner_radius;

  IntegrateOptions io;
  io.rtol = options.rtol;
  io.atol = options.atol;
  const CanonicalSolution Y0(reduction, sectors, 0, diag.match_radius, io, options.column_scaling);
  const CanonicalSolution Y1(reduction, sectors, 1, diag.match_radius, io, options.column_scaling);
  const CanonicalSolution Y2(reduction, sectors, 2, diag.match_radius, io, options.column_scaling);

  data.levelt = levelt_solution(V, U, options.levelt_order, options.levelt_T0);
  diag.levelt_radius = levelt_radius(data.levelt);

  auto overlap_points = [&](int nu) {
    std::vector<OverlapPoint> pts;
    for (double radius : {rc, 1.5 * rc})
      for (double delta : {-0.5, -0.25, 0.0, 0.25, 0.5})
        pts.push_back({radius, sectors.overlap_arg(nu) + delta * sectors.eps});
    return pts;
  };
  const double overlap_tol = std::max(100.0 * options.rtol, 1e-9);

  data.stokes.resize(2);
  LoopResult loop;
  ConnectionResult conn;
  IntegrationResult y0_start, y0_loop, y0_alt;
  std::vector<std::function<void()>> tasks = {
      [&] { data.stokes[0] = stokes_matrix(Y0, Y1, overlap_points(0), overlap_tol); },
      [&] { data.stokes[1] = stokes_matrix(Y1, Y2, overlap_points(1), overlap_tol); },
      [&] { loop = monodromy_at_zero(data.levelt, diag.levelt_radius, io); },
      [&] { conn = connection_matrix(Y0, data.levelt, rc, sectors.mid_arg(0), io); },
      [&] {
        y0_start = Y0.evaluate(rc, sectors.mid_arg(0));
        y0_loop = Y0.loop(rc, sectors.mid_arg(0));
      },
      [&] {
        if (!options.check_anchor) return;
        const CanonicalSolution alt(reduction, sectors, 0, 1.5 * diag.match_radius, io, options.column_scaling);
        y0_alt = alt.evaluate(rc, sectors.mid_arg(0));
      },
  };
  parallel_for(tasks.size(), options.threads, [&](std::size_t i) { tasks[i](); });

  for (auto& s : data.stokes) {
    s.overlap_arg = sectors.overlap_arg(s.nu);
    s.pattern_violation = pattern_violation(s.S, u, s.overlap_arg);
    diag.stokes_consistency = std::max(diag.stokes_consistency, s.consistency);
    diag.stokes_pattern = std::max(diag.stokes_pattern, s.pattern_violation);
    diag.stokes_det = std::max(diag.stokes_det, s.det_residual);
  }
  data.monodromy_zero = loop.M_loop;
  diag.loop_residual = loop.residual;
  data.connection_C = conn.C;
  diag.connection_radius_residual = conn.radius_residual;

  data.monodromy_sector0 = y0_start.Y.partialPivLu().solve(y0_loop.Y);
  std::vector<Complex> expected;
  for (Eigen::Index a = 0; a < data.levelt.J.rows(); ++a)
    expected.push_back(std::exp(2.0 * kPi * kI * data.levelt.J(a, a)));
  diag.cyclic_spectrum = multiset_distance(eigenvalues_of(data.monodromy_sector0), expected);
  diag.cyclic_conjugation =
      max_abs(data.monodromy_sector0 - conn.C * data.levelt.monodromy * conn.C.inverse()) /
      std::max(1.0, max_abs(data.monodromy_sector0));
  if (options.check_anchor)
    diag.anchor_independence = max_abs(y0_alt.Y - y0_start.Y) / std::max(1e-300, max_abs(y0_start.Y));

  diag.liouville = std::max({loop.liouville, conn.liouville, y0_start.liouville_residual,
                             y0_loop.liouville_residual, y0_alt.liouville_residual});
  return data;
}

}  // namespace causticlab
