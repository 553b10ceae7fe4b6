#include "causticlab/cli/spec_file.hpp"

#include <algorithm>
#include <fstream>

#include "causticlab/error.hpp"

namespace causticlab {

const CausticCurve& SpecFile::curve(const std::string& name) const {
  for (const auto& c : curves)
    if (c.name == name) return c;
  std::string names;
  for (const auto& c : curves) names += (names.empty() ? "" : ", ") + c.name;
  throw Error(ErrorCode::InvalidArgument, "no caustic curve named '" + name + "' (available: " + names + ")");
}

namespace {

std::vector<MultiPoly> poly_list(const json& j, std::size_t count, std::size_t num_vars, const std::string& what) {
  if (!j.is_array() || j.size() != count)
    throw Error(ErrorCode::ArityMismatch, what + " must list " + std::to_string(count) + " polynomials");
  std::vector<MultiPoly> out;
  for (const json& p : j) out.push_back(poly_from_json(p, num_vars));
  return out;
}

SpecFile parse_unchecked(const json& j) {
  SpecFile spec;
  ManifoldSpec& m = spec.manifold;
  m.dimension = j.at("dimension").get<std::size_t>();
  m.variables = j.at("variables").get<std::vector<std::string>>();
  if (m.variables.size() != m.dimension)
    throw Error(ErrorCode::ArityMismatch, "variables must list " + std::to_string(m.dimension) + " names");
  const auto unit = j.at("unit").get<std::string>();
  const auto it = std::find(m.variables.begin(), m.variables.end(), unit);
  if (it == m.variables.end()) throw Error(ErrorCode::ParseError, "unit '" + unit + "' is not a variable");
  m.unit_index = static_cast<std::size_t>(it - m.variables.begin());
  m.charge = j.at("charge").get<Rational>();
  const json& euler = j.at("euler");
  m.euler_linear = euler.at("linear").get<std::vector<Rational>>();
  m.euler_affine = euler.contains("affine") ? euler.at("affine").get<std::vector<Complex>>()
                                            : std::vector<Complex>(m.dimension, 0.0);
  m.potential = poly_from_json(j.at("potential"), m.dimension);

  if (j.contains("caustic_curves")) {
    for (const json& c : j.at("caustic_curves")) {
      CausticCurve curve;
      curve.name = c.at("name").get<std::string>();
      curve.param = poly_list(c.at("param"), m.dimension, 1, "curve '" + curve.name + "' param");
      if (c.contains("tangent"))
        for (const json& t : c.at("tangent"))
          curve.tangent.push_back(poly_list(t, m.dimension, 1, "curve '" + curve.name + "' tangent"));
      const auto range = c.at("s_range").get<std::vector<double>>();
      if (range.size() != 2) throw Error(ErrorCode::ParseError, "s_range must be [a, b]");
      curve.s_begin = range[0];
      curve.s_end = range[1];
      if (c.contains("samples")) curve.samples = c.at("samples").get<std::size_t>();
      spec.curves.push_back(std::move(curve));
    }
  }
  m.validate();
  return spec;
}

}  // namespace

SpecFile parse_spec(const json& j) {
  try {
    return parse_unchecked(j);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

SpecFile load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open spec file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return parse_spec(j);
}

json spec_to_json(const SpecFile& spec) {
  const ManifoldSpec& m = spec.manifold;
  json j = {{"dimension", m.dimension},
            {"variables", m.variables},
            {"unit", m.variables.at(m.unit_index)},
            {"charge", m.charge},
            {"euler", {{"linear", m.euler_linear}, {"affine", m.euler_affine}}},
            {"potential", m.potential}};
  json curves = json::array();
  for (const auto& c : spec.curves) {
    json entry = {{"name", c.name}, {"param", c.param}, {"s_range", {c.s_begin, c.s_end}}, {"samples", c.samples}};
    if (!c.tangent.empty()) entry["tangent"] = c.tangent;
    curves.push_back(std::move(entry));
  }
  j["caustic_curves"] = std::move(curves);
  return j;
}

}  // namespace causticlab
