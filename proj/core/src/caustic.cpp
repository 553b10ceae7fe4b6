#include "causticlab/caustic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "causticlab/error.hpp"

namespace causticlab {

namespace {

std::vector<Complex> sorted_eigenvalues(const CMatrix& a) {
  Eigen::ComplexEigenSolver<CMatrix> es(a, false);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), lex_less);
  return ev;
}

double spectral_scale(const std::vector<Complex>& ev) {
  double s = 1.0;
  for (const auto& l : ev) s = std::max(s, std::abs(l));
  return s;
}

double scaled_gap(Complex a, Complex b, double scale) {
  return std::norm(a - b) / (scale * scale);
}

double min_scaled_gap(const std::vector<Complex>& ev) {
  const double scale = spectral_scale(ev);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j) best = std::min(best, scaled_gap(ev[i], ev[j], scale));
  return best;
}

// Single-linkage clusters of eigenvalue indices.
std::vector<std::vector<std::size_t>> clusters(const std::vector<Complex>& ev, double tol) {
  const double scale = spectral_scale(ev);
  std::vector<std::size_t> parent(ev.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      if (scaled_gap(ev[i], ev[j], scale) < tol) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(ev.size(), -1);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return groups;
}

bool diagonalizable(const CMatrix& a, double tol) {
  const auto ev = sorted_eigenvalues(a);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (const auto& group : clusters(ev, tol)) {
    if (group.size() < 2) continue;
    Complex center = 0.0;
    for (auto i : group) center += ev[i];
    center /= static_cast<double>(group.size());
    CMatrix shifted = a - center * CMatrix::Identity(a.rows(), a.cols());
    Eigen::JacobiSVD<CMatrix> svd(shifted);
    const auto& sv = svd.singularValues();
    std::size_t nullity = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] <= 1e-6 * scale) ++nullity;
    if (nullity < group.size()) return false;
  }
  return true;
}

Complex bilinear(const CVector& a, const CMatrix& eta, const CVector& b) {
  return (a.transpose() * eta * b)(0, 0);
}

CVector unit_vector(std::size_t n, std::size_t i) {
  CVector e = CVector::Zero(static_cast<Eigen::Index>(n));
  e[static_cast<Eigen::Index>(i)] = 1.0;
  return e;
}

}  // namespace

std::string_view to_string(PointClass kind) noexcept {
  switch (kind) {
    case PointClass::Semisimple: return "Semisimple";
    case PointClass::SemisimpleCoalescent: return "SemisimpleCoalescent";
    case PointClass::Caustic: return "Caustic";
  }
  return "Unknown";
}

Complex bifurcation_value(const FrobeniusManifold& manifold, const CVector& p) {
  const auto ev = sorted_eigenvalues(manifold.euler_multiplication(p));
  Complex prod = 1.0;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j) prod *= (ev[i] - ev[j]) * (ev[i] - ev[j]);
  return prod;
}

Classification classify_point(const FrobeniusManifold& manifold, const CVector& p,
                              const ClassifyOptions& options) {
  const std::size_t n = manifold.dimension();
  const PointAlgebra pa = manifold.point_algebra(p);
  Classification out;
  out.eigenvalues = sorted_eigenvalues(pa.U);
  out.min_gap = n > 1 ? min_scaled_gap(out.eigenvalues) : std::numeric_limits<double>::infinity();
  if (out.min_gap > options.tol) {
    out.kind = PointClass::Semisimple;
    return out;
  }
  if (out.min_gap >= options.tol / 10.0)
    throw Error(ErrorCode::Inconclusive, "eigenvalue gap " + format_number(out.min_gap) +
                                             " lies inside the inconclusive band");

  std::vector<CVector> probes;
  for (std::size_t k = 0; k < n; ++k)
    if (k != manifold.spec().unit_index) probes.push_back(unit_vector(n, k));
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t r = 0; r < options.random_probes; ++r) {
    CVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double re = dist(rng);
      const double im = dist(rng);
      v[i] = Complex(re, im);
    }
    probes.push_back(v);
  }

  bool all_diagonalizable = diagonalizable(pa.U, options.tol);
  for (const CVector& v : probes) {
    const CMatrix a = FrobeniusManifold::mult_matrix(pa.c, v);
    const double gap = min_scaled_gap(sorted_eigenvalues(a));
    if (gap > options.tol) {
      out.kind = PointClass::SemisimpleCoalescent;
      return out;
    }
    if (gap < options.tol / 10.0 && !diagonalizable(a, options.tol)) all_diagonalizable = false;
  }
  out.kind = all_diagonalizable ? PointClass::SemisimpleCoalescent : PointClass::Caustic;
  return out;
}

CausticFrame caustic_frame(const FrobeniusManifold& manifold, const CVector& p,
                           const std::vector<CVector>& tangent, const FrameOptions& options) {
  const std::size_t n = manifold.dimension();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "caustic frames need dimension >= 2");
  const auto N = static_cast<Eigen::Index>(n);
  const PointAlgebra pa = manifold.point_algebra(p);
  const CMatrix& eta = pa.eta;
  auto mult = [&](const CVector& a, const CVector& b) -> CVector {
    return FrobeniusManifold::mult_matrix(pa.c, a) * b;
  };

  Eigen::ComplexEigenSolver<CMatrix> es(pa.U, true);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + N);
  const auto groups = clusters(ev, options.cluster_tol);
  std::size_t doubles = 0;
  for (const auto& g : groups) {
    if (g.size() > 2)
      throw Error(ErrorCode::DegenerateCoalescence,
                  std::to_string(g.size()) + " eigenvalues of E∘ coalesce");
    if (g.size() == 2) ++doubles;
  }
  if (doubles == 0) throw Error(ErrorCode::NotCaustic, "E∘ has simple spectrum");
  if (doubles > 1)
    throw Error(ErrorCode::DegenerateCoalescence, "more than one double eigenvalue of E∘");

  struct Simple {
    Complex u;
    CVector pi;
  };
  std::vector<Simple> simple;
  Complex simple_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() != 1) continue;
    CVector v = es.eigenvectors().col(static_cast<Eigen::Index>(g[0]));
    const CVector vv = mult(v, v);
    const Complex kappa = v.dot(vv) / v.dot(v);
    if (std::abs(kappa) < 1e-12 * v.squaredNorm())
      throw Error(ErrorCode::DegenerateCoalescence, "simple eigenvector squares to zero");
    simple.push_back({ev[g[0]], v / kappa});
    simple_sum += ev[g[0]];
  }
  std::sort(simple.begin(), simple.end(), [](const Simple& a, const Simple& b) { return lex_less(a.u, b.u); });

  CausticFrame f;
  f.point = p;
  const Complex u2 = (pa.U.trace() - simple_sum) / 2.0;
  f.eigenvalues.push_back(u2);
  CVector pi2 = unit_vector(n, manifold.spec().unit_index);
  for (const auto& s : simple) pi2 -= s.pi;
  f.idempotents.push_back(pi2);
  for (const auto& s : simple) {
    f.eigenvalues.push_back(s.u);
    f.idempotents.push_back(s.pi);
  }
  for (std::size_t i = 0; i < f.idempotents.size(); ++i)
    for (std::size_t j = 0; j < f.idempotents.size(); ++j) {
      CVector target = (i == j) ? f.idempotents[i] : CVector::Zero(N);
      f.idempotent_residual = std::max(f.idempotent_residual,
                                       (mult(f.idempotents[i], f.idempotents[j]) - target).cwiseAbs().maxCoeff());
    }

  const CMatrix P2 = FrobeniusManifold::mult_matrix(pa.c, pi2);
  Eigen::Index best = -1;
  double best_norm = 0.0;
  for (Eigen::Index k = 0; k < N; ++k) {
    const CVector col = P2.col(k);
    const CVector r = col - (pi2.dot(col) / pi2.dot(pi2)) * pi2;
    if (r.norm() > best_norm) {
      best_norm = r.norm();
      best = k;
    }
  }
  if (best < 0 || best_norm < 1e-10 * std::max(1.0, P2.norm()))
    throw Error(ErrorCode::DegenerateCoalescence, "local algebra at the double eigenvalue is one-dimensional");
  CVector w = P2.col(best);
  w /= w.norm();
  Eigen::Matrix<Complex, Eigen::Dynamic, 2> basis(N, 2);
  basis.col(0) = w;
  basis.col(1) = pi2;
  const Eigen::Vector2cd ab = basis.colPivHouseholderQr().solve(mult(w, w));
  CVector eps = w - (ab[0] / 2.0) * pi2;
  eps /= eps.norm();
  f.nilpotent_residual = mult(eps, eps).norm();
  if (f.nilpotent_residual > options.nilpotent_tol)
    throw Error(ErrorCode::MultipleNilpotents,
                "no nilpotent direction in the double eigenspace (|eps∘eps| = " +
                    format_number(f.nilpotent_residual) + "); the point is not on the caustic");
  f.nilpotent = eps;

  const Complex g11 = bilinear(eps, eta, eps);
  const Complex g12 = bilinear(eps, eta, pi2);
  const Complex g22 = bilinear(pi2, eta, pi2);
  const double gram_scale = std::max({std::abs(g11), std::abs(g12), std::abs(g22), 1e-300});
  if (std::abs(g22) < options.tol * gram_scale)
    throw Error(ErrorCode::DegenerateInducedMetric, "eta(pi_2, pi_2) vanishes");
  const Complex det = g11 * g22 - g12 * g12;
  if (std::abs(det) < options.tol * gram_scale * gram_scale)
    throw Error(ErrorCode::DegenerateInducedMetric, "Gram system for the normal is singular");
  const Complex alpha = std::sqrt(g22 / det);
  const Complex beta = -alpha * g12 / g22;
  f.normal = alpha * eps + beta * pi2;

  f.frame = CMatrix::Zero(N, N);
  f.frame.col(0) = f.normal;
  for (std::size_t i = 0; i < f.idempotents.size(); ++i) {
    const CVector& pi = f.idempotents[i];
    const Complex g = bilinear(pi, eta, pi);
    if (std::abs(g) < 1e-14 * std::max(1.0, pi.squaredNorm()))
      throw Error(ErrorCode::DegenerateInducedMetric, "idempotent has zero length");
    f.frame.col(static_cast<Eigen::Index>(i + 1)) = pi / std::sqrt(g);
  }
  f.frame_inverse = f.frame.transpose() * eta;
  f.orthonormality_residual = max_abs(f.frame.transpose() * eta * f.frame - CMatrix::Identity(N, N));

  f.U = f.frame_inverse * pa.U * f.frame;
  CMatrix expected = CMatrix::Zero(N, N);
  expected(0, 0) = u2;
  for (std::size_t i = 0; i < f.eigenvalues.size(); ++i)
    expected(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i + 1)) = f.eigenvalues[i];
  f.diagonal_residual = max_abs(f.U - expected);
  f.U = expected;

  CMatrix eta_mu = eta * pa.mu;
  eta_mu = (eta_mu - eta_mu.transpose()).eval() / 2.0;
  CMatrix V = f.frame.transpose() * eta_mu * f.frame;
  f.V = (V - V.transpose()) / 2.0;
  // Branch of the normal with Re(2i V(1,0)) >= 0.
  if ((2.0 * kI * f.V(1, 0)).real() < 0.0) {
    f.normal = -f.normal;
    f.frame.col(0) *= -1.0;
    f.frame_inverse.row(0) *= -1.0;
    f.V.row(0) *= -1.0;
    f.V.col(0) *= -1.0;
  }
  f.m = hertling_m(f.V).m;

  if (!tangent.empty()) {
    CMatrix T(N, static_cast<Eigen::Index>(tangent.size()));
    for (std::size_t k = 0; k < tangent.size(); ++k) T.col(static_cast<Eigen::Index>(k)) = tangent[k];
    auto qr = T.colPivHouseholderQr();
    for (const CVector& pi : f.idempotents) {
      const CVector x = qr.solve(pi);
      f.tangency_residual = std::max(f.tangency_residual, (T * x - pi).norm() / pi.norm());
    }
    for (const CVector& t : tangent)
      f.tangency_residual = std::max(f.tangency_residual, std::abs(bilinear(f.normal, eta, t)) / t.norm());
  }
  return f;
}

HertlingM hertling_m(const CMatrix& V, double tol) {
  if (V.rows() < 2 || V.cols() < 2) throw Error(ErrorCode::InvalidArgument, "V must be at least 2x2");
  const double v = std::abs(V(1, 0));
  if (v < tol)
    throw Error(ErrorCode::CoalescenceNotCaustic, "|V21| vanishes (m = 2, semisimple coalescence)");
  if (2.0 * v >= 1.0) throw Error(ErrorCode::InvalidArgument, "|V21| >= 1/2 has no Hertling invariant");
  HertlingM out;
  out.m = 2.0 / (1.0 - 2.0 * v);
  const double r = std::round(out.m);
  out.near_integer = std::abs(out.m - r) < 1e-6 && r >= 3.0;
  return out;
}

std::vector<double> default_approach_samples() {
  std::vector<double> t;
  for (int k = 0; k < 7; ++k) t.push_back(std::pow(10.0, -1.5 - 0.25 * k));
  return t;
}

ApproachFit m_from_approach(const FrobeniusManifold& manifold, const CVector& caustic_point,
                            const CVector& direction, const std::vector<double>& t_samples) {
  if (t_samples.size() < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 t samples");
  for (double t : t_samples)
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "t samples must be positive");
  const double scale = spectral_scale(sorted_eigenvalues(manifold.euler_multiplication(caustic_point)));

  ApproachFit fit;
  fit.t = t_samples;
  for (double t : t_samples) {
    const auto ev = sorted_eigenvalues(manifold.euler_multiplication(caustic_point + t * direction));
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ev.size(); ++i)
      for (std::size_t j = i + 1; j < ev.size(); ++j) gap = std::min(gap, std::abs(ev[i] - ev[j]));
    fit.gaps.push_back(gap);
  }
  const double largest = *std::max_element(fit.gaps.begin(), fit.gaps.end());
  if (!(largest > 1e-10 * scale))
    throw Error(ErrorCode::FitFailure, "eigenvalue gap does not open along the direction");

  const auto count = static_cast<double>(t_samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t_samples.size(); ++i) {
    if (!(fit.gaps[i] > 0.0)) throw Error(ErrorCode::FitFailure, "zero eigenvalue gap at a sample");
    xs.push_back(std::log(t_samples[i]));
    ys.push_back(std::log(fit.gaps[i]));
    sx += xs.back();
    sy += ys.back();
    sxx += xs.back() * xs.back();
    sxy += xs.back() * ys.back();
  }
  const double denom = count * sxx - sx * sx;
  if (std::abs(denom) < 1e-14) throw Error(ErrorCode::FitFailure, "t samples are not spread");
  fit.slope = (count * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.slope * sx) / count;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  fit.m = 2.0 * fit.slope;
  if (fit.residual > 0.1)
    throw Error(ErrorCode::FitFailure, "log-log fit residual " + format_number(fit.residual) + " > 0.1");
  return fit;
}

void align_frame(CausticFrame& frame, const CausticFrame& previous) {
  const Eigen::Index n = frame.frame.cols();
  if (previous.frame.cols() != n) throw Error(ErrorCode::ArityMismatch, "frames of different size");

  // Match simple idempotent columns (2..n-1) by overlap.
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index j = 2; j < n; ++j) {
    double best = -1.0;
    Eigen::Index pick = j;
    for (Eigen::Index k = 2; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      const double ov = std::abs(previous.frame.col(j).dot(frame.frame.col(k))) /
                        (previous.frame.col(j).norm() * frame.frame.col(k).norm());
      if (ov > best) {
        best = ov;
        pick = k;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    perm[static_cast<std::size_t>(j)] = pick;
  }

  CMatrix Q = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index k = perm[static_cast<std::size_t>(j)];
    const Complex ov = previous.frame.col(j).dot(frame.frame.col(k)) /
                       (previous.frame.col(j).norm() * frame.frame.col(k).norm());
    if (std::abs(ov) < 0.1 || std::abs(ov.real()) < 0.3 * std::abs(ov))
      throw Error(ErrorCode::FrameDiscontinuity,
                  "frame column " + std::to_string(j) + " has no sign-consistent overlap with the previous sample");
    Q(k, j) = ov.real() < 0.0 ? -1.0 : 1.0;
  }
  frame.frame = frame.frame * Q;
  frame.frame_inverse = Q.transpose() * frame.frame_inverse;
  frame.U = Q.transpose() * frame.U * Q;
  frame.V = Q.transpose() * frame.V * Q;
  frame.normal = frame.frame.col(0);
  auto eigenvalues = frame.eigenvalues;
  auto idempotents = frame.idempotents;
  for (Eigen::Index j = 2; j < n; ++j) {
    const auto k = static_cast<std::size_t>(perm[static_cast<std::size_t>(j)]);
    frame.eigenvalues[static_cast<std::size_t>(j) - 1] = eigenvalues[k - 1];
    frame.idempotents[static_cast<std::size_t>(j) - 1] = idempotents[k - 1];
  }
}

double IdentityResiduals::max() const {
  return std::max({exchange, residue_derivative, commutator, eigenvalue_derivative, block_curvature,
                   v12_derivative});
}

namespace {

struct LocalFrames {
  CausticFrame center;
  CMatrix dP;  // d/ds of the frame
  CMatrix dV;
  CMatrix dU;
  // Components of pi_i in the chart basis (e, velocity).
  std::vector<Complex> dr_coeff;
  std::vector<Complex> ds_coeff;
};

LocalFrames local_frames(const FrobeniusManifold& manifold, const CurveMap& curve, Complex s, double h,
                         const CausticFrame* reference, const FrameOptions& options) {
  const std::size_t n = manifold.dimension();
  if (n != 3)
    throw Error(ErrorCode::InvalidArgument,
                "curve charts (r, s) -> point(s) + r e cover the caustic only for dimension 3");
  auto frame_at = [&](Complex t, const CausticFrame* ref) {
    CausticFrame f = caustic_frame(manifold, curve.point(t), {}, options);
    if (ref) align_frame(f, *ref);
    return f;
  };
  LocalFrames lf;
  lf.center = frame_at(s, reference);
  const CausticFrame plus = frame_at(s + h, &lf.center);
  const CausticFrame minus = frame_at(s - h, &lf.center);
  lf.dP = (plus.frame - minus.frame) / (2.0 * h);
  lf.dV = (plus.V - minus.V) / (2.0 * h);
  lf.dU = (plus.U - minus.U) / (2.0 * h);

  const auto N = static_cast<Eigen::Index>(n);
  CMatrix J(N, 2);
  J.col(0) = unit_vector(n, manifold.spec().unit_index);
  J.col(1) = curve.velocity(s);
  auto qr = J.colPivHouseholderQr();
  for (const CVector& pi : lf.center.idempotents) {
    const CVector c = qr.solve(pi);
    if ((J * c - pi).norm() > 1e-8 * std::max(1.0, pi.norm()))
      throw Error(ErrorCode::InvalidArgument, "idempotent is not tangent to the curve chart");
    lf.dr_coeff.push_back(c[0]);
    lf.ds_coeff.push_back(c[1]);
  }
  return lf;
}

std::vector<CMatrix> connection_from(const LocalFrames& lf) {
  const CMatrix omega_s = lf.center.frame_inverse * lf.dP;
  std::vector<CMatrix> out;
  for (const Complex c : lf.ds_coeff) out.push_back(c * omega_s);
  return out;
}

CMatrix projector(Eigen::Index n, std::size_t i) {
  CMatrix E = CMatrix::Zero(n, n);
  if (i == 0) {
    E(0, 0) = 1.0;
    E(1, 1) = 1.0;
  } else {
    E(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i + 1)) = 1.0;
  }
  return E;
}

}  // namespace

std::vector<CMatrix> caustic_connection(const FrobeniusManifold& manifold, const CurveMap& curve,
                                        Complex s, double fd_step, const FrameOptions& options) {
  return connection_from(local_frames(manifold, curve, s, fd_step, nullptr, options));
}

CMatrix frame_derivative_connection(const FrobeniusManifold& manifold, const CurveMap& curve, Complex s,
                                    double fd_step, const CausticFrame* reference, const FrameOptions& options) {
  CausticFrame center = caustic_frame(manifold, curve.point(s), {}, options);
  if (reference) align_frame(center, *reference);
  CausticFrame plus = caustic_frame(manifold, curve.point(s + fd_step), {}, options);
  CausticFrame minus = caustic_frame(manifold, curve.point(s - fd_step), {}, options);
  align_frame(plus, center);
  align_frame(minus, center);
  return center.frame_inverse * (plus.frame - minus.frame) / (2.0 * fd_step);
}

IdentityReport connection_identities_check(const FrobeniusManifold& manifold, const CurveMap& curve,
                                           const std::vector<Complex>& s_samples, double fd_step,
                                           double tol, const FrameOptions& options) {
  IdentityReport report;
  report.s_samples = s_samples;
  report.tol = tol;
  const auto N = static_cast<Eigen::Index>(manifold.dimension());
  const double outer = 10.0 * fd_step;
  std::optional<CausticFrame> previous;
  for (const Complex s : s_samples) {
    const LocalFrames lf = local_frames(manifold, curve, s, fd_step, previous ? &*previous : nullptr, options);
    previous = lf.center;
    const auto omega = connection_from(lf);
    const CMatrix& U = lf.center.U;
    const CMatrix& V = lf.center.V;
    report.v12.push_back(V(0, 1));

    IdentityResiduals r;
    const std::size_t k = omega.size();
    for (std::size_t i = 0; i < k; ++i) {
      const CMatrix Ei = projector(N, i);
      for (std::size_t j = 0; j < k; ++j) {
        const CMatrix Ej = projector(N, j);
        r.exchange = std::max(r.exchange, max_abs(Ei * omega[j] - omega[j] * Ei - Ej * omega[i] + omega[i] * Ej));
      }
      const CMatrix dVi = lf.ds_coeff[i] * lf.dV;
      // Moving along e shifts U by the identity and leaves the frame fixed.
      const CMatrix dUi = lf.dr_coeff[i] * CMatrix::Identity(N, N) + lf.ds_coeff[i] * lf.dU;
      r.residue_derivative = std::max(r.residue_derivative, max_abs(dVi - (V * omega[i] - omega[i] * V)));
      r.commutator = std::max(r.commutator, max_abs(U * omega[i] - omega[i] * U + Ei * V - V * Ei));
      r.eigenvalue_derivative = std::max(r.eigenvalue_derivative, max_abs(dUi - Ei));
      r.v12_derivative = std::max(r.v12_derivative, std::abs(dVi(0, 1)));
    }

    const LocalFrames plus = local_frames(manifold, curve, s + outer, fd_step, &lf.center, options);
    const LocalFrames minus = local_frames(manifold, curve, s - outer, fd_step, &lf.center, options);
    const auto omega_plus = connection_from(plus);
    const auto omega_minus = connection_from(minus);
    auto block = [](const CMatrix& m) -> CMatrix { return m.topLeftCorner(2, 2); };
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const CMatrix dwj = lf.ds_coeff[i] * (block(omega_plus[j]) - block(omega_minus[j])) / (2.0 * outer);
        const CMatrix dwi = lf.ds_coeff[j] * (block(omega_plus[i]) - block(omega_minus[i])) / (2.0 * outer);
        const CMatrix wi = block(omega[i]);
        const CMatrix wj = block(omega[j]);
        r.block_curvature = std::max(r.block_curvature, max_abs(dwj - dwi + wi * wj - wj * wi));
      }

    report.worst.exchange = std::max(report.worst.exchange, r.exchange);
    report.worst.residue_derivative = std::max(report.worst.residue_derivative, r.residue_derivative);
    report.worst.commutator = std::max(report.worst.commutator, r.commutator);
    report.worst.eigenvalue_derivative = std::max(report.worst.eigenvalue_derivative, r.eigenvalue_derivative);
    report.worst.block_curvature = std::max(report.worst.block_curvature, r.block_curvature);
    report.worst.v12_derivative = std::max(report.worst.v12_derivative, r.v12_derivative);
    report.per_sample.push_back(r);
  }
  for (const Complex a : report.v12)
    for (const Complex b : report.v12) report.v12_spread = std::max(report.v12_spread, std::abs(a - b));
  report.passed = report.worst.max() < tol;
  return report;
}

}  // namespace causticlab
