#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "causticlab/poly.hpp"
#include "causticlab/rational.hpp"
#include "causticlab/types.hpp"

namespace causticlab {

// Potential, Euler field E = sum (d_i t_i + r_i) d/dt_i, charge d and the
// coordinate index of the unit field.
struct ManifoldSpec {
  std::size_t dimension = 0;
  std::vector<std::string> variables;
  MultiPoly potential{1};
  std::vector<Rational> euler_linear;
  std::vector<Complex> euler_affine;
  Rational charge;
  std::size_t unit_index = 0;

  void validate() const;
};

// c^k_ij stored densely, k slowest.
class StructureTensor {
 public:
  explicit StructureTensor(std::size_t n = 0) : n_(n), data_(n * n * n, 0.0) {}

  std::size_t dimension() const { return n_; }
  Complex& operator()(std::size_t k, std::size_t i, std::size_t j) { return data_[(k * n_ + i) * n_ + j]; }
  const Complex& operator()(std::size_t k, std::size_t i, std::size_t j) const {
    return data_[(k * n_ + i) * n_ + j];
  }

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

struct PointAlgebra {
  CVector point;
  CMatrix eta;
  CMatrix eta_inv;
  StructureTensor c;
  CMatrix U;
  CMatrix mu;
};

struct AxiomResiduals {
  double commutativity = 0.0;
  double associativity = 0.0;
  double frobenius = 0.0;
  double unit = 0.0;
  double euler_metric = 0.0;
  double quasi_homogeneity = 0.0;
  // Always 0: eta(e, -) has constant coefficients in flat coordinates.
  double closedness = 0.0;

  double max() const;
};

struct AxiomReport {
  std::vector<CVector> points;
  std::vector<AxiomResiduals> per_point;
  AxiomResiduals worst;
  double tol = 0.0;
  bool passed = false;
};

class FrobeniusManifold {
 public:
  explicit FrobeniusManifold(ManifoldSpec spec);

  const ManifoldSpec& spec() const { return spec_; }
  std::size_t dimension() const { return spec_.dimension; }

  const CMatrix& metric() const { return eta_; }
  const CMatrix& metric_inverse() const { return eta_inv_; }
  const CMatrix& mu() const { return mu_; }
  // Diagonal of mu as exact rationals: (2-d)/2 - d_i.
  std::vector<Rational> mu_diagonal_exact() const;

  StructureTensor structure_constants(const CVector& p) const;
  static CMatrix mult_matrix(const StructureTensor& c, const CVector& v);
  CMatrix mult_matrix(const CVector& p, const CVector& v) const;
  CVector euler_field(const CVector& p) const;
  CMatrix euler_multiplication(const CVector& p) const;
  PointAlgebra point_algebra(const CVector& p) const;

  AxiomReport verify_axioms(const std::vector<CVector>& points, double tol) const;

 private:
  const MultiPoly& third(std::size_t s, std::size_t i, std::size_t j) const {
    return third_[(s * spec_.dimension + i) * spec_.dimension + j];
  }

  ManifoldSpec spec_;
  std::vector<MultiPoly> third_;
  CMatrix eta_;
  CMatrix eta_inv_;
  CMatrix mu_;
};

// Points with independent real and imaginary parts uniform in [-radius, radius].
std::vector<CVector> random_points(std::size_t n, std::size_t count, std::uint64_t seed,
                                   double radius = 1.0);

}  // namespace causticlab
