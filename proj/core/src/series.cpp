#include "causticlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "causticlab/error.hpp"

namespace causticlab {

namespace {

template <class T>
using Mat = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
double mat_max_abs(const Mat<T>& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, static_cast<double>(std::abs(m(i, j))));
  return best;
}

bool coalescent_pair(const CMatrix& U) {
  if (U.rows() < 2) return false;
  const double scale = std::max(1.0, U.diagonal().cwiseAbs().maxCoeff());
  return std::abs(U(0, 0) - U(1, 1)) < 1e-12 * scale;
}

bool kept(Eigen::Index i, Eigen::Index j, bool coalescent) {
  return i == j || (coalescent && i < 2 && j < 2);
}

void check_inputs(const CMatrix& U, const CMatrix& V) {
  if (U.rows() != U.cols() || V.rows() != V.cols() || U.rows() != V.rows())
    throw Error(ErrorCode::ArityMismatch, "U and V must be square of the same size");
  const double scale = std::max(1.0, max_abs(U));
  CMatrix off = U;
  off.diagonal().setZero();
  if (max_abs(off) > 1e-12 * scale) throw Error(ErrorCode::InvalidArgument, "U must be diagonal");
}

template <class T>
struct Series {
  std::vector<Mat<T>> G, B;
};

// G_1..G_K and B_1..B_K of the block-diagonalizing gauge.
template <class T>
Series<T> block_series(const Mat<T>& U, const Mat<T>& V, std::size_t K, bool coalescent) {
  const Eigen::Index n = U.rows();
  Series<T> out;
  const Mat<T> I = Mat<T>::Identity(n, n);
  for (std::size_t k = 1; k <= K; ++k) {
    const Mat<T>& prev = (k == 1) ? I : out.G[k - 2];
    Mat<T> R = static_cast<T>(k - 1) * prev + V * prev;
    for (std::size_t s = 1; s < k; ++s) R -= out.G[k - s - 1] * out.B[s - 1];
    Mat<T> G = Mat<T>::Zero(n, n);
    Mat<T> B = Mat<T>::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        if (kept(i, j, coalescent)) {
          B(i, j) = R(i, j);
          continue;
        }
        const std::complex<T> d = U(i, i) - U(j, j);
        if (std::abs(d) < static_cast<T>(1e-10))
          throw Error(ErrorCode::SmallDivisor, "|u_" + std::to_string(i + 1) + " - u_" + std::to_string(j + 1) +
                                                   "| < 1e-10 outside the kept block");
        G(i, j) = R(i, j) / d;
      }
    out.G.push_back(G);
    out.B.push_back(B);
  }
  return out;
}

template <class T>
Mat<T> residue_H0(const Mat<T>& V, Eigen::Index n, bool coalescent) {
  Mat<T> H0 = Mat<T>::Identity(n, n);
  if (!coalescent || std::abs(V(0, 1)) < static_cast<T>(1e-14)) return H0;
  const T r = T(1) / std::sqrt(T(2));
  const std::complex<T> i(0, 1);
  H0(0, 0) = r;
  H0(0, 1) = r;
  H0(1, 0) = i * r;
  H0(1, 1) = -i * r;
  return H0;
}

template <class T>
struct EulerForm {
  std::vector<Mat<T>> B_hat;
  std::vector<Mat<T>> H;
  Mat<T> B_exp;
};

// H_1..H_K from B_1..B_{K+1}.
template <class T>
EulerForm<T> euler_form(const std::vector<Mat<T>>& B, const Mat<T>& H0, std::size_t K) {
  if (B.size() < K + 1) throw Error(ErrorCode::InvalidArgument, "need B_1..B_{K+1} for H_1..H_K");
  const Eigen::Index n = H0.rows();
  const Mat<T> H0inv = H0.inverse();
  EulerForm<T> out;
  for (const auto& b : B) out.B_hat.push_back(H0inv * b * H0);
  out.B_exp = Mat<T>::Zero(n, n);
  out.B_exp.diagonal() = out.B_hat[0].diagonal();
  if (mat_max_abs<T>(out.B_hat[0] - out.B_exp) > 1e-10 * std::max(1.0, mat_max_abs<T>(out.B_hat[0])))
    throw Error(ErrorCode::InvalidArgument, "H0 does not diagonalize B_1");
  for (std::size_t k = 1; k <= K; ++k) {
    Mat<T> rhs = -out.B_hat[k];
    for (std::size_t l = 1; l < k; ++l) rhs -= out.B_hat[k - l] * out.H[l - 1];
    Mat<T> H = Mat<T>::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        if (rhs(a, b) == std::complex<T>(0)) continue;
        const std::complex<T> d = out.B_exp(a, a) - out.B_exp(b, b) + static_cast<T>(k);
        if (std::abs(d) < static_cast<T>(1e-12))
          throw Error(ErrorCode::ResonantResidue, "B_a - B_b + k vanishes at order " + std::to_string(k));
        H(a, b) = rhs(a, b) / d;
      }
    out.H.push_back(H);
  }
  return out;
}

template <class T>
Mat<T> inverse_series(const std::vector<Mat<T>>& coeffs, std::complex<T> w, Eigen::Index n) {
  // Id + sum_k coeffs[k-1] w^k by Horner.
  Mat<T> acc = Mat<T>::Zero(n, n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc + *it) * w;
  return Mat<T>::Identity(n, n) + acc;
}

// d/dz of Id + sum_k coeffs[k-1] z^-k.
template <class T>
Mat<T> inverse_series_derivative(const std::vector<Mat<T>>& coeffs, std::complex<T> z, Eigen::Index n) {
  Mat<T> acc = Mat<T>::Zero(n, n);
  const std::complex<T> w = std::complex<T>(1) / z;
  std::complex<T> wk = w * w;
  for (std::size_t k = 1; k <= coeffs.size(); ++k) {
    acc -= static_cast<T>(k) * wk * coeffs[k - 1];
    wk *= w;
  }
  return acc;
}

template <class T>
Mat<T> to_mat(const CMatrix& m) {
  return m.template cast<std::complex<T>>();
}

}  // namespace

double FormalReduction::recursion_residual(std::size_t k) const {
  if (k == 0 || k > G.size()) throw Error(ErrorCode::IndexOutOfRange, "order out of range");
  const Eigen::Index n = U.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix& prev = (k == 1) ? I : G[k - 2];
  CMatrix r = -(U * G[k - 1] - G[k - 1] * U) + static_cast<double>(k - 1) * prev + V * prev - B[k - 1];
  for (std::size_t s = 1; s < k; ++s) r -= G[k - s - 1] * B[s - 1];
  return max_abs(r);
}

BlockSeries block_diagonalize_formal(const CMatrix& U, const CMatrix& V, std::size_t K) {
  check_inputs(U, V);
  BlockSeries out;
  out.coalescent = coalescent_pair(U);
  auto s = block_series<double>(U, V, K, out.coalescent);
  out.G = std::move(s.G);
  out.B = std::move(s.B);
  return out;
}

ResidueDiagonalization diagonalize_residue(Complex V12) {
  if (std::abs(V12) < 1e-14) throw Error(ErrorCode::ZeroResidue, "V12 vanishes");
  const double r = 1.0 / std::sqrt(2.0);
  ResidueDiagonalization out;
  out.H0_block << r, r, kI * r, -kI * r;
  out.b1 = kI * V12;
  out.b2 = -kI * V12;
  return out;
}

std::vector<CMatrix> reduce_to_euler_form(const std::vector<CMatrix>& B, const CMatrix& H0, std::size_t K) {
  return euler_form<double>(B, H0, K).H;
}

FormalReduction formal_reduction(const CMatrix& U, const CMatrix& V, std::size_t K) {
  if (K == 0) throw Error(ErrorCode::InvalidArgument, "truncation order must be positive");
  check_inputs(U, V);
  FormalReduction red;
  red.U = U;
  red.V = V;
  red.order = K;
  red.coalescent = coalescent_pair(U);
  auto s = block_series<double>(U, V, K + 1, red.coalescent);
  red.H0 = residue_H0<double>(V, U.rows(), red.coalescent);
  auto e = euler_form<double>(s.B, red.H0, K);
  s.G.pop_back();
  red.G = std::move(s.G);
  red.B = std::move(s.B);
  red.B_hat = std::move(e.B_hat);
  red.H = std::move(e.H);
  red.B_exp = std::move(e.B_exp);
  return red;
}

CMatrix formal_gauge_eval(const FormalReduction& r, Complex z) {
  const Eigen::Index n = r.U.rows();
  const Complex w = 1.0 / z;
  return inverse_series<double>(r.G, w, n) * r.H0 * inverse_series<double>(r.H, w, n);
}

CMatrix formal_solution_eval(const FormalReduction& r, Complex z, double arg) {
  const Eigen::Index n = r.U.rows();
  const Complex logz(std::log(std::abs(z)), arg);
  CMatrix W = formal_gauge_eval(r, z);
  for (Eigen::Index a = 0; a < n; ++a) W.col(a) *= std::exp(r.B_exp(a, a) * logz - r.U(a, a) * z);
  return W;
}

CMatrix formal_solution_eval(const FormalReduction& r, Complex z) {
  return formal_solution_eval(r, z, std::arg(z));
}

double formal_tail_estimate(const FormalReduction& r, double R) {
  const double g = r.G.empty() ? 0.0 : max_abs(r.G.back());
  const double h = r.H.empty() ? 0.0 : max_abs(r.H.back());
  return std::max(g, h) * std::pow(R, -static_cast<double>(r.order));
}

double formal_residual(const FormalReduction& r, Complex z) {
  using T = long double;
  const Eigen::Index n = r.U.rows();
  const Mat<T> U = to_mat<T>(r.U);
  const Mat<T> V = to_mat<T>(r.V);
  auto s = block_series<T>(U, V, r.order + 1, r.coalescent);
  const Mat<T> H0 = residue_H0<T>(V, n, r.coalescent);
  auto e = euler_form<T>(s.B, H0, r.order);
  s.G.pop_back();
  const std::complex<T> zz(z.real(), z.imag());
  const std::complex<T> w = std::complex<T>(1) / zz;
  const Mat<T> G = inverse_series<T>(s.G, w, n);
  const Mat<T> H = inverse_series<T>(e.H, w, n);
  const Mat<T> dG = inverse_series_derivative<T>(s.G, zz, n);
  const Mat<T> dH = inverse_series_derivative<T>(e.H, zz, n);
  const Mat<T> W = G * H0 * H;
  const Mat<T> dW = dG * H0 * H + G * H0 * dH;
  const Mat<T> res = dW + W * e.B_exp * w - W * U - (V * w - U) * W;
  return mat_max_abs<T>(Mat<T>(res * W.inverse()));
}

LeveltData levelt_solution(const CMatrix& residue, const CMatrix& U, std::size_t K_levelt,
                           const std::optional<CMatrix>& T0) {
  if (residue.rows() != residue.cols() || U.rows() != residue.rows() || U.cols() != U.rows())
    throw Error(ErrorCode::ArityMismatch, "residue and U must be square of the same size");
  const Eigen::Index n = residue.rows();
  const double scale = std::max(1.0, max_abs(residue));
  LeveltData d;
  d.residue = residue;
  d.U = U;

  CMatrix t0;
  if (T0) {
    t0 = *T0;
    if (t0.rows() != n || t0.cols() != n) throw Error(ErrorCode::ArityMismatch, "T0 has wrong size");
  } else {
    Eigen::ComplexEigenSolver<CMatrix> es(residue, true);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return lex_less(es.eigenvalues()[a], es.eigenvalues()[b]);
    });
    t0.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      CVector v = es.eigenvectors().col(order[static_cast<std::size_t>(j)]);
      for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(v[i]) > 1e-8 * v.norm()) {
          v /= v[i];
          break;
        }
      t0.col(j) = v;
    }
  }
  Eigen::JacobiSVD<CMatrix> svd(t0);
  const auto& sv = svd.singularValues();
  if (sv[n - 1] < 1e-12 * sv[0])
    throw Error(ErrorCode::NonDiagonalizableResidue, "eigenvector matrix of the residue is singular");
  const CMatrix t0inv = t0.inverse();
  d.J = t0inv * residue * t0;
  CMatrix off = d.J;
  off.diagonal().setZero();
  if (max_abs(off) > 1e-10 * scale)
    throw Error(T0 ? ErrorCode::InvalidArgument : ErrorCode::NonDiagonalizableResidue,
                "T0 does not diagonalize the residue");
  const CVector jd = d.J.diagonal();
  d.J = jd.asDiagonal();

  d.D = CMatrix::Zero(n, n);
  d.S = CMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const Complex mu = d.J(a, a);
    double fl = std::floor(mu.real());
    if (std::abs(mu.real() - std::round(mu.real())) < 1e-10) fl = std::round(mu.real());
    d.D(a, a) = fl;
    d.S(a, a) = mu - fl;
  }

  d.T.push_back(t0);
  d.R = CMatrix::Zero(n, n);
  for (std::size_t k = 1; k <= K_levelt; ++k) {
    CMatrix q = -U * d.T[k - 1];
    for (std::size_t j = 1; j < k; ++j) q -= d.T[j] * d.R_terms[k - j - 1];
    q = t0inv * q;
    CMatrix X = CMatrix::Zero(n, n);
    CMatrix Rk = CMatrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        const Complex gap = d.J(a, a) - d.J(b, b) - static_cast<double>(k);
        if (std::abs(gap) < 1e-10) {
          Rk(a, b) = q(a, b);
          if (std::abs(q(a, b)) > 0.0) d.resonant = true;
        } else {
          X(a, b) = q(a, b) / (-gap);
        }
      }
    d.T.push_back(t0 * X);
    d.R_terms.push_back(Rk);
    d.R += Rk;
  }
  const CMatrix L = 2.0 * std::numbers::pi * kI * (d.R + d.S);
  d.monodromy = L.exp();
  return d;
}

CMatrix levelt_T(const LeveltData& d, Complex z) {
  const Eigen::Index n = d.residue.rows();
  CMatrix acc = CMatrix::Zero(n, n);
  for (auto it = d.T.rbegin(); it != d.T.rend(); ++it) acc = acc * z + *it;
  return acc;
}

CMatrix levelt_eval(const LeveltData& d, Complex z, double arg) {
  const Eigen::Index n = d.residue.rows();
  const Complex logz(std::log(std::abs(z)), arg);
  CMatrix zD = CMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) zD(a, a) = std::exp(d.D(a, a) * logz);
  CMatrix RS = (d.R + d.S) * logz;
  return levelt_T(d, z) * zD * RS.exp();
}

double levelt_residual(const LeveltData& d, Complex z) {
  const Eigen::Index n = d.residue.rows();
  const CMatrix T = levelt_T(d, z);
  CMatrix dT = CMatrix::Zero(n, n);
  for (std::size_t k = d.T.size() - 1; k >= 1; --k) dT = dT * z + static_cast<double>(k) * d.T[k];
  CMatrix normal = d.J / z;
  Complex zk = 1.0;
  for (const auto& Rk : d.R_terms) {
    normal += Rk * zk;
    zk *= z;
  }
  const CMatrix res = dT + T * normal - (d.residue / z - d.U) * T;
  return max_abs(res * T.inverse());
}

}  // namespace causticlab
