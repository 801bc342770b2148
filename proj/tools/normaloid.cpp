// normaloid: classify matrices, run the property suites, generate class
// members and scan the (p,r) pencil.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "normaloid/classes.hpp"
#include "normaloid/config.hpp"
#include "normaloid/errors.hpp"
#include "normaloid/fixtures.hpp"
#include "normaloid/generators.hpp"
#include "normaloid/harness.hpp"
#include "normaloid/matrix_io.hpp"
#include "normaloid/pencil.hpp"
#include "normaloid/random.hpp"

namespace {

using namespace normaloid;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kNumerical = 3 };

template <typename T>
void env_override(const char* name, T& field) {
  const char* raw = std::getenv(name);
  if (raw == nullptr) return;
  const std::string text(raw);
  std::size_t used = 0;
  try {
    if constexpr (std::is_same_v<T, int>) {
      field = std::stoi(text, &used);
    } else {
      field = std::stod(text, &used);
    }
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InvalidParameter(std::string(name) + ": not a number: '" + text + "'");
  }
}

ToleranceConfig tolerance(const std::string& profile) {
  ToleranceConfig cfg = ToleranceConfig::from_profile(profile);
  env_override("NORMALOID_EQ_RTOL", cfg.eq_rtol);
  env_override("NORMALOID_PSD_TOL", cfg.psd_tol);
  env_override("NORMALOID_RANK_TOL", cfg.rank_tol);
  env_override("NORMALOID_SPHERE_RESTARTS", cfg.sphere_restarts);
  env_override("NORMALOID_GRID_POINTS", cfg.grid_points);
  cfg.validate();
  return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) throw InvalidParameter("cannot write " + out_path);
}

// Accepts both quasinormal-partial-isometry and quasinormal_partial_isometry.
std::string underscored(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

struct Options {
  std::string tolerance = "default";
  std::string out;

  std::string matrix_file;
  std::vector<double> p_list{0.5, 1.0, 2.0};
  std::vector<double> r_list{0.5, 1.0, 2.0};
  std::vector<int> k_list{1, 2};

  std::string suite = "all";
  int trials = 200;
  std::uint64_t seed = 1;
  std::string fixtures_dir;

  std::string generator;
  int n = 2;
  std::optional<int> rank;
  double scale = 1.0;

  double p = 1.0;
  double r = 1.0;
  std::optional<int> points;

  std::string write_dir;
};

int cmd_classify(const Options& o) {
  const ToleranceConfig cfg = tolerance(o.tolerance);
  const ComplexMatrix t = read_matrix_file(o.matrix_file);
  ClassifyOptions options;
  options.p_list = o.p_list;
  options.r_list = o.r_list;
  options.k_list = o.k_list;
  emit(dump_json(to_json(classify(t, options, cfg))), o.out);
  return kOk;
}

int cmd_verify(const Options& o) {
  const ToleranceConfig cfg = tolerance(o.tolerance);
  if (!o.fixtures_dir.empty()) {
    try {
      load_fixtures(o.fixtures_dir, cfg);
    } catch (const FixtureMismatch& e) {
      std::cerr << "normaloid: " << e.what() << "\n";
      return kFailure;
    }
  }
  std::vector<PropertyResult> results;
  if (o.suite == "all") {
    results = run_all(o.trials, o.seed, cfg);
  } else {
    results.push_back(run_suite(theorem_id_from_string(o.suite), o.trials, o.seed, cfg));
  }
  const bool all_passed =
      std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed(); });
  emit(dump_json(results_to_json(results)), o.out);
  for (const auto& r : results) {
    if (!r.passed()) {
      std::cerr << "normaloid: " << to_string(r.theorem_id) << ": " << r.failures
                << " failure(s)\n";
    }
    if (r.skip_alarm()) {
      std::cerr << "normaloid: " << to_string(r.theorem_id) << ": " << r.skipped << " of "
                << r.trials << " trials skipped as marginal; check the tolerance profile\n";
    }
  }
  return all_passed ? kOk : kFailure;
}

int cmd_generate(const Options& o) {
  GeneratorSpec spec;
  spec.generator = generator_class_from_string(underscored(o.generator));
  spec.dimension = o.n;
  spec.seed = o.seed;
  spec.rank = o.rank;
  spec.spectrum_scale = o.scale;
  const ComplexMatrix m = generate(spec);
  if (o.out.empty()) {
    emit(dump_json(matrix_to_json(m)), "");
  } else {
    write_matrix_file(o.out, m);
  }
  return kOk;
}

int cmd_pencil_scan(const Options& o) {
  const ToleranceConfig cfg = tolerance(o.tolerance);
  const ComplexMatrix t = read_matrix_file(o.matrix_file);
  const int points = o.points.value_or(cfg.grid_points);
  emit(pencil_scan_csv(pencil_scan(t, o.p, o.r, points, cfg)), o.out);
  return kOk;
}

int cmd_fixtures(const Options& o) {
  if (!o.write_dir.empty()) {
    write_fixture_files(o.write_dir);
    return kOk;
  }
  std::string listing;
  for (const auto& f : fixture_registry()) {
    listing += f.name + "\t" + std::to_string(f.matrix.rows()) + "\t" + f.provenance + "\n";
  }
  emit(listing, o.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-class verifier for finite complex matrices"};
  app.require_subcommand(1);
  Options o;

  auto add_tolerance = [&o](CLI::App* cmd) {
    cmd->add_option("--tolerance", o.tolerance, "Tolerance profile")
        ->check(CLI::IsMember({"default", "strict", "loose"}));
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify a matrix file (JSON report)");
  classify_cmd->add_option("matrix", o.matrix_file, "Matrix JSON file")->required();
  classify_cmd->add_option("--p", o.p_list, "p values for absolute-(p,r)-paranormality");
  classify_cmd->add_option("--r", o.r_list, "r values for absolute-(p,r)-paranormality");
  classify_cmd->add_option("--k", o.k_list, "k values for (absolute-)k-paranormality");
  classify_cmd->add_option("--out", o.out, "Write the report here instead of stdout");
  add_tolerance(classify_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run property suites (JSON results)");
  verify_cmd->add_option("--suite", o.suite, "Suite id or 'all'");
  verify_cmd->add_option("--trials", o.trials, "Trials per suite");
  verify_cmd->add_option("--seed", o.seed, "Master seed");
  verify_cmd->add_option("--fixtures", o.fixtures_dir, "Check fixture files in this directory first");
  verify_cmd->add_option("--out", o.out, "Write results here instead of stdout");
  add_tolerance(verify_cmd);

  auto* generate_cmd = app.add_subcommand("generate", "Write a seeded member of a class");
  generate_cmd->add_option("--class", o.generator, "Generator class")->required();
  generate_cmd->add_option("--n", o.n, "Dimension");
  generate_cmd->add_option("--rank", o.rank, "Rank (partial isometries, binormal)");
  generate_cmd->add_option("--seed", o.seed, "Seed");
  generate_cmd->add_option("--scale", o.scale, "Spectrum scale");
  generate_cmd->add_option("--out", o.out, "Output matrix file");

  auto* scan_cmd = app.add_subcommand("pencil-scan", "Minimum pencil eigenvalue over the lambda grid (CSV)");
  scan_cmd->add_option("matrix", o.matrix_file, "Matrix JSON file")->required();
  scan_cmd->add_option("--p", o.p, "p > 0");
  scan_cmd->add_option("--r", o.r, "r > 0");
  scan_cmd->add_option("--points", o.points, "Grid size (default: grid_points of the profile)");
  scan_cmd->add_option("--out", o.out, "Output CSV file");
  add_tolerance(scan_cmd);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "List the fixture registry");
  fixtures_cmd->add_option("--write", o.write_dir, "Write the registry as JSON files into this directory");
  fixtures_cmd->add_option("--out", o.out, "Write the listing here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*generate_cmd) return cmd_generate(o);
    if (*scan_cmd) return cmd_pencil_scan(o);
    if (*fixtures_cmd) return cmd_fixtures(o);
  } catch (const FixtureMismatch& e) {
    std::cerr << "normaloid: " << e.what() << "\n";
    return kFailure;
  } catch (const InvalidMatrix& e) {
    std::cerr << "normaloid: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidParameter& e) {
    std::cerr << "normaloid: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownTheoremId& e) {
    std::cerr << "normaloid: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "normaloid: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "normaloid: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
