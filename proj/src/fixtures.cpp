#include "normaloid/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "normaloid/errors.hpp"

namespace normaloid {

namespace {

using enum ClassId;

std::vector<Fixture> build_registry() {
  std::vector<Fixture> out;
  const ComplexMatrix normaloid_3x3 = from_rows(3, {2, 0, 0, 0, 0, 2, 0, 1, 0});

  out.push_back({"normaloid_self_adjoint_polar",
                 "normaloid matrix whose polar factor is self-adjoint while T is not; "
                 "eigenvalues {2, +-sqrt(2)}, ||T|| = r(T) = 2",
                 normaloid_3x3,
                 {{normaloid, true},
                  {binormal, true},
                  {posinormal, true},
                  {self_adjoint, false},
                  {normal, false},
                  {unitary, false},
                  {partial_isometry, false},
                  {quasinormal, false},
                  {hyponormal, false},
                  {class_a, false},
                  {paranormal, false},
                  {absolute_pr_paranormal, false}}});

  out.push_back({"binormal_not_hyponormal",
                 "T*T = diag(4,1,4) and TT* = diag(4,4,1) commute but differ: binormal, "
                 "normaloid, not normal and not hyponormal",
                 normaloid_3x3,
                 {{binormal, true},
                  {normaloid, true},
                  {normal, false},
                  {hyponormal, false},
                  {absolute_pr_paranormal, false}}});

  out.push_back({"partial_isometry_not_quasinormal",
                 "V*V = diag(1,0,1), VV* = diag(1,1,0): a normaloid binormal partial "
                 "isometry that is not quasinormal",
                 from_rows(3, {1, 0, 0, 0, 0, 1, 0, 0, 0}),
                 {{partial_isometry, true},
                  {normaloid, true},
                  {binormal, true},
                  {quasinormal, false},
                  {normal, false},
                  {paranormal, false},
                  {posinormal, false}}});

  out.push_back({"nilpotent_2x2",
                 "nilpotent shift on C^2: binormal partial isometry that is not normaloid",
                 from_rows(2, {0, 1, 0, 0}),
                 {{binormal, true},
                  {partial_isometry, true},
                  {normaloid, false},
                  {normal, false},
                  {posinormal, false}}});

  out.push_back({"normaloid_square_partial_isometry",
                 "normaloid with T^2 a partial isometry while T*T = diag(1,0,1/4) is not "
                 "a projection",
                 from_rows(3, {1, 0, 0, 0, 0, 0.5, 0, 0, 0}),
                 {{normaloid, true},
                  {binormal, true},
                  {partial_isometry, false},
                  {posinormal, false},
                  {absolute_pr_paranormal, false}}});

  out.push_back({"binormal_nilpotent_scaled",
                 "binormal nilpotent with T^2 = 0 a partial isometry while T is not",
                 from_rows(2, {0, 2, 0, 0}),
                 {{binormal, true},
                  {partial_isometry, false},
                  {normaloid, false},
                  {paranormal, false},
                  {absolute_pr_paranormal, false}}});

  out.push_back({"posinormal_involution",
                 "invertible, hence posinormal, with T^2 = I while T*T = [[1,1],[1,2]] is "
                 "not a projection",
                 from_rows(2, {1, 1, 0, -1}),
                 {{posinormal, true},
                  {binormal, true},
                  {normal, false},
                  {partial_isometry, false},
                  {normaloid, false},
                  {paranormal, false},
                  {absolute_pr_paranormal, false}}});
  return out;
}

}  // namespace

bool Fixture::expects(ClassId id) const {
  for (const auto& [cls, value] : expected)
    if (cls == id) return value;
  throw InvalidParameter("fixture " + name + " has no expectation for " +
                         std::string(to_string(id)));
}

const std::vector<Fixture>& fixture_registry() {
  static const std::vector<Fixture> registry = build_registry();
  return registry;
}

const Fixture& fixture(std::string_view name) {
  for (const auto& f : fixture_registry())
    if (f.name == name) return f;
  throw InvalidParameter("unknown fixture: " + std::string(name));
}

void verify_fixture(const Fixture& f, const ToleranceConfig& cfg) {
  const ClassReport report = classify(f.matrix, {}, cfg);
  for (const auto& [cls, value] : f.expected) {
    if (report.member(cls) != value) throw FixtureMismatch(f.name, std::string(to_string(cls)));
  }
}

Json fixture_to_json(const Fixture& f) {
  Json j;
  j["name"] = f.name;
  j["provenance"] = f.provenance;
  const Json m = matrix_to_json(f.matrix);
  j["n"] = m["n"];
  j["data"] = m["data"];
  Json expected = Json::object();
  for (const auto& [cls, value] : f.expected) expected[std::string(to_string(cls))] = value;
  j["expected"] = expected;
  return j;
}

Fixture fixture_from_json(const Json& j) {
  Fixture f;
  try {
    f.name = j.at("name").get<std::string>();
    f.provenance = j.value("provenance", std::string());
    for (const auto& [key, value] : j.at("expected").items()) {
      f.expected.emplace_back(class_id_from_string(key), value.get<bool>());
    }
  } catch (const Json::exception& e) {
    throw InvalidMatrix(std::string("malformed fixture: ") + e.what());
  } catch (const InvalidParameter& e) {
    throw InvalidMatrix(std::string("malformed fixture: ") + e.what());
  }
  f.matrix = matrix_from_json(j);
  return f;
}

std::vector<Fixture> load_fixtures(const std::filesystem::path& dir, const ToleranceConfig& cfg) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<Fixture> out;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw InvalidMatrix("cannot read " + path.string());
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw InvalidMatrix(path.string() + ": " + e.what());
    }
    Fixture f = fixture_from_json(j);
    verify_fixture(f, cfg);
    out.push_back(std::move(f));
  }
  return out;
}

void write_fixture_files(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : fixture_registry()) {
    std::ofstream out(dir / (f.name + ".json"), std::ios::binary);
    out << dump_json(fixture_to_json(f));
    if (!out) throw Error("cannot write fixture " + f.name);
  }
}

}  // namespace normaloid
