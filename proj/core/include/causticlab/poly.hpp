#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "causticlab/types.hpp"

namespace causticlab {

using Exponent = std::vector<unsigned>;

// Sparse polynomial in num_vars complex variables. Terms are kept in
// lexicographic exponent order; coefficients below 1e-300 in modulus are
// dropped.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t num_vars = 1);

  static MultiPoly constant(std::size_t num_vars, Complex c);
  static MultiPoly variable(std::size_t num_vars, std::size_t index);
  static MultiPoly monomial(Exponent exponent, Complex c);

  std::size_t num_vars() const { return num_vars_; }
  const std::map<Exponent, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t total_degree() const;
  bool is_constant() const;
  Complex coefficient(const Exponent& e) const;

  // Adds c to the coefficient of e.
  void add_term(const Exponent& e, Complex c);

  Complex eval(const CVector& p) const;
  std::string to_string() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

 private:
  std::size_t num_vars_;
  std::map<Exponent, Complex> terms_;
};

MultiPoly add(const MultiPoly& a, const MultiPoly& b);
MultiPoly sub(const MultiPoly& a, const MultiPoly& b);
MultiPoly mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly scale(const MultiPoly& a, Complex c);
MultiPoly pow(const MultiPoly& a, unsigned k);
MultiPoly partial(const MultiPoly& a, std::size_t i);
Complex eval(const MultiPoly& a, const CVector& p);

// Substitutes polynomials (all in the same ring) for each variable.
MultiPoly compose(const MultiPoly& a, const std::vector<MultiPoly>& subs);

inline MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return add(a, b); }
inline MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return sub(a, b); }
inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return mul(a, b); }

}  // namespace causticlab
