#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace causticlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Largest entry modulus; 0 for an empty matrix.
double max_abs(const CMatrix& m);

// Orders complex numbers by real part, then imaginary part.
bool lex_less(const Complex& a, const Complex& b);

// Largest distance under the best pairing of the two lists (exact up to 8
// entries, lexicographic pairing beyond). Lists of different size give
// +infinity.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

}  // namespace causticlab
