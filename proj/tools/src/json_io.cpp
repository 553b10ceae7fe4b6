#include "causticlab/cli/json_io.hpp"

#include "causticlab/error.hpp"

NLOHMANN_JSON_NAMESPACE_BEGIN

void adl_serializer<std::complex<double>>::to_json(json& j, const std::complex<double>& c) {
  j = json::array({c.real(), c.imag()});
}

void adl_serializer<std::complex<double>>::from_json(const json& j, std::complex<double>& c) {
  if (j.is_number()) {
    c = {j.get<double>(), 0.0};
    return;
  }
  if (!j.is_array() || j.size() != 2)
    throw causticlab::Error(causticlab::ErrorCode::ParseError, "complex number must be [re, im], got " + j.dump());
  c = {j[0].get<double>(), j[1].get<double>()};
}

void adl_serializer<causticlab::CMatrix>::to_json(json& j, const causticlab::CMatrix& m) {
  j = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(std::move(row));
  }
}

void adl_serializer<causticlab::CMatrix>::from_json(const json& j, causticlab::CMatrix& m) {
  if (!j.is_array()) throw causticlab::Error(causticlab::ErrorCode::ParseError, "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  m.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw causticlab::Error(causticlab::ErrorCode::ParseError, "matrix rows must have equal length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<std::complex<double>>();
  }
}

void adl_serializer<causticlab::CVector>::to_json(json& j, const causticlab::CVector& v) {
  j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
}

void adl_serializer<causticlab::CVector>::from_json(const json& j, causticlab::CVector& v) {
  if (!j.is_array()) throw causticlab::Error(causticlab::ErrorCode::ParseError, "vector must be an array");
  v.resize(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<std::complex<double>>();
}

NLOHMANN_JSON_NAMESPACE_END

namespace causticlab {

void to_json(json& j, const Rational& r) { j = r.to_string(); }

void from_json(const json& j, Rational& r) {
  if (j.is_number_integer()) {
    r = Rational(j.get<std::int64_t>());
    return;
  }
  if (!j.is_string()) throw Error(ErrorCode::ParseError, "rational must be a string \"p/q\", got " + j.dump());
  r = Rational::parse(j.get<std::string>());
}

void to_json(json& j, const MultiPoly& p) {
  j = json::array();
  for (const auto& [e, c] : p.terms()) j.push_back({{"exponents", e}, {"coeff", c}});
}

MultiPoly poly_from_json(const json& j, std::size_t num_vars) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "polynomial must be a list of monomials");
  MultiPoly p(num_vars);
  for (const json& term : j) {
    if (!term.is_object() || !term.contains("exponents") || !term.contains("coeff"))
      throw Error(ErrorCode::ParseError, "monomial needs \"exponents\" and \"coeff\": " + term.dump());
    const auto e = term.at("exponents").get<Exponent>();
    if (e.size() != num_vars)
      throw Error(ErrorCode::ArityMismatch, "monomial " + term.dump() + " has " + std::to_string(e.size()) +
                                                " exponents, expected " + std::to_string(num_vars));
    p.add_term(e, term.at("coeff").get<Complex>());
  }
  return p;
}

void to_json(json& j, const FrameReport& r) {
  j = {{"curve", r.curve},
       {"s", r.s},
       {"classification", r.classification},
       {"eigenvalues", r.frame.eigenvalues},
       {"V12", r.v12},
       {"|V12|", r.v12_abs},
       {"m", r.frame.m},
       {"m_near_integer", r.m_near_integer},
       {"approach", r.approach},
       {"frame", r.frame}};
}

void from_json(const json& j, FrameReport& r) {
  j.at("curve").get_to(r.curve);
  j.at("s").get_to(r.s);
  j.at("classification").get_to(r.classification);
  j.at("frame").get_to(r.frame);
  j.at("V12").get_to(r.v12);
  j.at("|V12|").get_to(r.v12_abs);
  j.at("m_near_integer").get_to(r.m_near_integer);
  j.at("approach").get_to(r.approach);
}

void to_json(json& j, const VerifyReport& r) {
  j = {{"samples", r.samples}, {"seed", r.seed}, {"metric", r.metric}, {"mu", r.mu}, {"axioms", r.axioms}};
}

void from_json(const json& j, VerifyReport& r) {
  j.at("samples").get_to(r.samples);
  j.at("seed").get_to(r.seed);
  j.at("metric").get_to(r.metric);
  j.at("mu").get_to(r.mu);
  j.at("axioms").get_to(r.axioms);
}

}  // namespace causticlab
