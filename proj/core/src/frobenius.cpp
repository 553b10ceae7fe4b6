#include "causticlab/frobenius.hpp"

#include <algorithm>
#include <random>

#include "causticlab/error.hpp"

namespace causticlab {

double AxiomResiduals::max() const {
  return std::max({commutativity, associativity, frobenius, unit, euler_metric, quasi_homogeneity,
                   closedness});
}

void ManifoldSpec::validate() const {
  const std::size_t n = dimension;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!variables.empty() && variables.size() != n)
    throw Error(ErrorCode::ArityMismatch, "variable list does not match dimension");
  if (potential.num_vars() != n)
    throw Error(ErrorCode::ArityMismatch, "potential is not a polynomial in `dimension` variables");
  if (euler_linear.size() != n)
    throw Error(ErrorCode::ArityMismatch, "euler.linear needs one weight per coordinate");
  if (!euler_affine.empty() && euler_affine.size() != n)
    throw Error(ErrorCode::ArityMismatch, "euler.affine needs one constant per coordinate");
  if (unit_index >= n) throw Error(ErrorCode::IndexOutOfRange, "unit index out of range");
  if (!(euler_linear[unit_index] == Rational(1)))
    throw Error(ErrorCode::InvalidArgument, "the unit coordinate must have Euler weight 1");
}

FrobeniusManifold::FrobeniusManifold(ManifoldSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  const std::size_t n = spec_.dimension;
  if (spec_.euler_affine.empty()) spec_.euler_affine.assign(n, 0.0);

  std::vector<MultiPoly> first, second;
  for (std::size_t s = 0; s < n; ++s) first.push_back(partial(spec_.potential, s));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i) second.push_back(partial(first[s], i));
  third_.reserve(n * n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) third_.push_back(partial(second[s * n + i], j));

  const auto N = static_cast<Eigen::Index>(n);
  eta_ = CMatrix::Zero(N, N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const MultiPoly& entry = third(spec_.unit_index, i, j);
      if (!entry.is_constant())
        throw Error(ErrorCode::NonConstantMetric,
                    "eta(" + std::to_string(i) + "," + std::to_string(j) + ") = " + entry.to_string());
      eta_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          entry.coefficient(Exponent(n, 0));
    }
  Eigen::FullPivLU<CMatrix> lu(eta_);
  lu.setThreshold(1e-12);
  if (lu.rank() < N) throw Error(ErrorCode::SingularMetric, "metric is degenerate");
  eta_inv_ = lu.inverse();

  const Rational half_shift = (Rational(2) - spec_.charge) / Rational(2);
  mu_ = CMatrix::Zero(N, N);
  for (std::size_t i = 0; i < n; ++i)
    mu_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        (half_shift - spec_.euler_linear[i]).to_double();
  CMatrix eta_mu = eta_ * mu_;
  if (max_abs(eta_mu + eta_mu.transpose()) > 1e-12)
    throw Error(ErrorCode::MuNotAntisymmetric,
                "mu is not eta-antisymmetric; charge and weights are inconsistent");
}

std::vector<Rational> FrobeniusManifold::mu_diagonal_exact() const {
  const Rational half_shift = (Rational(2) - spec_.charge) / Rational(2);
  std::vector<Rational> out;
  for (const auto& w : spec_.euler_linear) out.push_back(half_shift - w);
  return out;
}

StructureTensor FrobeniusManifold::structure_constants(const CVector& p) const {
  const std::size_t n = spec_.dimension;
  if (static_cast<std::size_t>(p.size()) != n)
    throw Error(ErrorCode::ArityMismatch, "point has wrong dimension");
  std::vector<Complex> f3(n * n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Complex v = third(s, i, j).eval(p);
        f3[(s * n + i) * n + j] = v;
        f3[(s * n + j) * n + i] = v;
      }
  StructureTensor c(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Complex sum = 0.0;
        for (std::size_t s = 0; s < n; ++s)
          sum += eta_inv_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s)) * f3[(s * n + i) * n + j];
        c(k, i, j) = sum;
      }
  return c;
}

CMatrix FrobeniusManifold::mult_matrix(const StructureTensor& c, const CVector& v) {
  const std::size_t n = c.dimension();
  const auto N = static_cast<Eigen::Index>(n);
  if (v.size() != N) throw Error(ErrorCode::ArityMismatch, "vector has wrong dimension");
  CMatrix m = CMatrix::Zero(N, N);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += v[static_cast<Eigen::Index>(i)] * c(k, i, j);
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = sum;
    }
  return m;
}

CMatrix FrobeniusManifold::mult_matrix(const CVector& p, const CVector& v) const {
  return mult_matrix(structure_constants(p), v);
}

CVector FrobeniusManifold::euler_field(const CVector& p) const {
  const std::size_t n = spec_.dimension;
  if (static_cast<std::size_t>(p.size()) != n)
    throw Error(ErrorCode::ArityMismatch, "point has wrong dimension");
  CVector e(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto I = static_cast<Eigen::Index>(i);
    e[I] = spec_.euler_linear[i].to_double() * p[I] + spec_.euler_affine[i];
  }
  return e;
}

CMatrix FrobeniusManifold::euler_multiplication(const CVector& p) const {
  return mult_matrix(structure_constants(p), euler_field(p));
}

PointAlgebra FrobeniusManifold::point_algebra(const CVector& p) const {
  PointAlgebra a;
  a.point = p;
  a.eta = eta_;
  a.eta_inv = eta_inv_;
  a.c = structure_constants(p);
  a.U = mult_matrix(a.c, euler_field(p));
  a.mu = mu_;
  return a;
}

AxiomReport FrobeniusManifold::verify_axioms(const std::vector<CVector>& points, double tol) const {
  const std::size_t n = spec_.dimension;
  std::vector<MultiPoly> fourth;
  fourth.reserve(n * n * n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) fourth.push_back(partial(third(s, i, j), l));

  double euler_metric = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double w = (spec_.euler_linear[i] + spec_.euler_linear[j] - (Rational(2) - spec_.charge)).to_double();
      euler_metric = std::max(euler_metric, std::abs(w * eta_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }

  AxiomReport report;
  report.points = points;
  report.tol = tol;
  for (const CVector& p : points) {
    AxiomResiduals r;
    r.euler_metric = euler_metric;
    const StructureTensor c = structure_constants(p);
    const CVector E = euler_field(p);

    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          r.commutativity = std::max(r.commutativity, std::abs(c(k, i, j) - c(k, j, i)));
          const Complex delta = (k == j) ? 1.0 : 0.0;
          r.unit = std::max(r.unit, std::abs(c(k, spec_.unit_index, j) - delta));
        }

    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) {
            Complex sum = 0.0;
            for (std::size_t m = 0; m < n; ++m) sum += c(m, i, j) * c(l, m, k) - c(m, j, k) * c(l, m, i);
            r.associativity = std::max(r.associativity, std::abs(sum));
          }

    std::vector<Complex> lowered(n * n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Complex sum = 0.0;
          for (std::size_t l = 0; l < n; ++l)
            sum += eta_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) * c(l, i, j);
          lowered[(i * n + j) * n + k] = sum;
        }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          r.frobenius = std::max(r.frobenius, std::abs(lowered[(i * n + j) * n + k] - lowered[(j * n + k) * n + i]));

    // E(c^k_ij) = (1 + d_k - d_i - d_j) c^k_ij
    std::vector<Complex> f4(n * n * n * n);
    for (std::size_t idx = 0; idx < fourth.size(); ++idx) f4[idx] = fourth[idx].eval(p);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Complex derivative = 0.0;
          for (std::size_t l = 0; l < n; ++l) {
            Complex dc = 0.0;
            for (std::size_t s = 0; s < n; ++s)
              dc += eta_inv_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s)) *
                    f4[((s * n + i) * n + j) * n + l];
            derivative += E[static_cast<Eigen::Index>(l)] * dc;
          }
          const double weight = (Rational(1) + spec_.euler_linear[k] - spec_.euler_linear[i] -
                                 spec_.euler_linear[j]).to_double();
          r.quasi_homogeneity = std::max(r.quasi_homogeneity, std::abs(derivative - weight * c(k, i, j)));
        }

    report.worst.commutativity = std::max(report.worst.commutativity, r.commutativity);
    report.worst.associativity = std::max(report.worst.associativity, r.associativity);
    report.worst.frobenius = std::max(report.worst.frobenius, r.frobenius);
    report.worst.unit = std::max(report.worst.unit, r.unit);
    report.worst.euler_metric = std::max(report.worst.euler_metric, r.euler_metric);
    report.worst.quasi_homogeneity = std::max(report.worst.quasi_homogeneity, r.quasi_homogeneity);
    report.per_point.push_back(r);
  }
  if (points.empty()) report.worst.euler_metric = euler_metric;
  report.passed = report.worst.max() < tol;
  return report;
}

std::vector<CVector> random_points(std::size_t n, std::size_t count, std::uint64_t seed, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-radius, radius);
  std::vector<CVector> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    CVector p(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const double re = dist(rng);
      const double im = dist(rng);
      p[i] = Complex(re, im);
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace causticlab
