#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "causticlab/cli/json_io.hpp"
#include "causticlab/frobenius.hpp"
#include "causticlab/isocheck.hpp"

namespace causticlab {

struct SpecFile {
  ManifoldSpec manifold;
  std::vector<CausticCurve> curves;

  // Throws InvalidArgument naming the available curves.
  const CausticCurve& curve(const std::string& name) const;
};

// Throws ParseError (with the JSON location when available) or ArityMismatch.
SpecFile parse_spec(const json& j);
SpecFile load_spec(const std::filesystem::path& path);
json spec_to_json(const SpecFile& spec);

}  // namespace causticlab
