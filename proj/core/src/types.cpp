#include "causticlab/types.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace causticlab {

double max_abs(const CMatrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(m(i, j)));
  return best;
}

bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.size() > 8) {
    std::sort(a.begin(), a.end(), lex_less);
    std::sort(b.begin(), b.end(), lex_less);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
  }
  // Bottleneck matching over all pairings.
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size() && worst < best; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace causticlab
