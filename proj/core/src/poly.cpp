#include "causticlab/poly.hpp"

#include <algorithm>
#include <sstream>

#include "causticlab/error.hpp"

namespace causticlab {

namespace {

constexpr double kDropBelow = 1e-300;

void check_arity(const MultiPoly& a, const MultiPoly& b) {
  if (a.num_vars() != b.num_vars())
    throw Error(ErrorCode::ArityMismatch, "polynomials in " + std::to_string(a.num_vars()) +
                                              " and " + std::to_string(b.num_vars()) + " variables");
}

}  // namespace

MultiPoly::MultiPoly(std::size_t num_vars) : num_vars_(num_vars) {
  if (num_vars == 0) throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one variable");
}

MultiPoly MultiPoly::constant(std::size_t num_vars, Complex c) {
  MultiPoly p(num_vars);
  p.add_term(Exponent(num_vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  Exponent e(num_vars, 0);
  e[index] = 1;
  MultiPoly p(num_vars);
  p.add_term(e, 1.0);
  return p;
}

MultiPoly MultiPoly::monomial(Exponent exponent, Complex c) {
  MultiPoly p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

std::size_t MultiPoly::total_degree() const {
  std::size_t best = 0;
  for (const auto& [e, c] : terms_) {
    std::size_t d = 0;
    for (unsigned k : e) d += k;
    best = std::max(best, d);
  }
  return best;
}

bool MultiPoly::is_constant() const { return total_degree() == 0; }

Complex MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, Complex c) {
  if (e.size() != num_vars_)
    throw Error(ErrorCode::ArityMismatch, "exponent vector length " + std::to_string(e.size()) +
                                              " in a ring of " + std::to_string(num_vars_) + " variables");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (std::abs(c) >= kDropBelow) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (std::abs(it->second) < kDropBelow) terms_.erase(it);
}

Complex MultiPoly::eval(const CVector& p) const {
  if (static_cast<std::size_t>(p.size()) != num_vars_)
    throw Error(ErrorCode::ArityMismatch, "evaluation point has wrong length");
  std::vector<std::vector<Complex>> powers(num_vars_);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < num_vars_; ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(1.0);
      while (pw.size() <= e[i]) pw.push_back(pw.back() * p[static_cast<Eigen::Index>(i)]);
    }
  Complex sum = 0.0;
  for (const auto& [e, c] : terms_) {
    Complex term = c;
    for (std::size_t i = 0; i < num_vars_; ++i)
      if (e[i] != 0) term *= powers[i][e[i]];
    sum += term;
  }
  return sum;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) out << "*t" << i << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return out.str();
}

MultiPoly add(const MultiPoly& a, const MultiPoly& b) {
  check_arity(a, b);
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, c);
  return r;
}

MultiPoly sub(const MultiPoly& a, const MultiPoly& b) { return add(a, scale(b, -1.0)); }

MultiPoly mul(const MultiPoly& a, const MultiPoly& b) {
  check_arity(a, b);
  MultiPoly r(a.num_vars());
  Exponent e(a.num_vars());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly scale(const MultiPoly& a, Complex c) {
  MultiPoly r(a.num_vars());
  for (const auto& [e, v] : a.terms()) r.add_term(e, v * c);
  return r;
}

MultiPoly pow(const MultiPoly& a, unsigned k) {
  MultiPoly r = MultiPoly::constant(a.num_vars(), 1.0);
  for (unsigned i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

MultiPoly partial(const MultiPoly& a, std::size_t i) {
  if (i >= a.num_vars())
    throw Error(ErrorCode::IndexOutOfRange, "partial derivative index " + std::to_string(i) +
                                                " in a ring of " + std::to_string(a.num_vars()) + " variables");
  MultiPoly r(a.num_vars());
  for (const auto& [e, c] : a.terms()) {
    if (e[i] == 0) continue;
    Exponent d = e;
    d[i] -= 1;
    r.add_term(d, c * static_cast<double>(e[i]));
  }
  return r;
}

Complex eval(const MultiPoly& a, const CVector& p) { return a.eval(p); }

MultiPoly compose(const MultiPoly& a, const std::vector<MultiPoly>& subs) {
  if (subs.size() != a.num_vars())
    throw Error(ErrorCode::ArityMismatch, "compose needs one substitute per variable");
  const std::size_t m = subs.front().num_vars();
  for (const auto& s : subs)
    if (s.num_vars() != m) throw Error(ErrorCode::ArityMismatch, "substitutes live in different rings");
  MultiPoly r(m);
  for (const auto& [e, c] : a.terms()) {
    MultiPoly term = MultiPoly::constant(m, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term = mul(term, pow(subs[i], e[i]));
    r = add(r, term);
  }
  return r;
}

}  // namespace causticlab
