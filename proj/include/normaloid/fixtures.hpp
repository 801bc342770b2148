#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "normaloid/classes.hpp"
#include "normaloid/config.hpp"
#include "normaloid/matrix.hpp"
#include "normaloid/matrix_io.hpp"

namespace normaloid {

/// A named matrix with the class memberships it is known to have.
/// For parametrized classes the expectation covers every tested parameter.
struct Fixture {
  std::string name;
  std::string provenance;
  ComplexMatrix matrix;
  std::vector<std::pair<ClassId, bool>> expected;

  /// Expected membership; throws InvalidParameter if the class is not listed.
  bool expects(ClassId id) const;
};

/// The built-in registry, in a fixed order.
const std::vector<Fixture>& fixture_registry();

/// Looks a fixture up by name; throws InvalidParameter if unknown.
const Fixture& fixture(std::string_view name);

/// Classifies the matrix and throws FixtureMismatch on the first expected
/// verdict that is not reproduced.
void verify_fixture(const Fixture& f, const ToleranceConfig& cfg = {});

/// Matrix-format JSON with extra "name", "provenance" and "expected" keys.
Json fixture_to_json(const Fixture& f);
Fixture fixture_from_json(const Json& j);

/// Reads every *.json in `dir` (sorted by file name) and verifies each one.
std::vector<Fixture> load_fixtures(const std::filesystem::path& dir,
                                   const ToleranceConfig& cfg = {});

/// Writes the registry as <name>.json files into `dir`.
void write_fixture_files(const std::filesystem::path& dir);

}  // namespace normaloid
