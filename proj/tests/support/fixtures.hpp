#pragma once

#include <filesystem>
#include <string>

#include "causticlab/cli/spec_file.hpp"
#include "causticlab/frobenius.hpp"

namespace causticlab::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(CAUSTICLAB_FIXTURE_DIR) / name;
}

inline SpecFile fixture(const std::string& name) { return load_spec(fixture_path(name)); }

inline FrobeniusManifold manifold(const std::string& name) { return FrobeniusManifold(fixture(name).manifold); }

}  // namespace causticlab::testing
