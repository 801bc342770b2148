// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "normaloid/classes.hpp"
#include "normaloid/fixtures.hpp"
#include "normaloid/generators.hpp"
#include "normaloid/harness.hpp"
#include "normaloid/linalg.hpp"
#include "normaloid/pencil.hpp"
#include "normaloid/transforms.hpp"
#include "oracle.hpp"

using namespace normaloid;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kExampleTol = 1e-10;         // norms, radius and U of the 3x3 example
constexpr double kGramTol = 1e-12;            // V*V and VV* of the partial isometry example
constexpr double kWitnessViolation = 1e-6;    // replayed witness, normalized units
constexpr double kIdentityTol = 1e-8;         // identity suites
constexpr double kSkipFraction = 0.05;
constexpr double kLimitFixtures = 1.0;        // seconds
constexpr double kLimitTwoByTwo = 10.0;
constexpr double kLimitOracle = 300.0;
constexpr double kLimitSuites = 600.0;
constexpr std::array<double, 3> kGrid{0.5, 1.0, 2.0};

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool member(const ClassReport& report, ClassId id) { return report.member(id); }

// ---------------------------------------------------------------------------

Outcome fixture_goldens() {
  Outcome o;
  const auto start = Clock::now();
  const ComplexMatrix t = from_rows(3, {2, 0, 0, 0, 0, 2, 0, 1, 0});
  const ComplexMatrix u_expected = from_rows(3, {1, 0, 0, 0, 0, 1, 0, 1, 0});
  const ClassReport a = classify(t);
  o.check(std::abs(a.operator_norm - 2.0) <= kExampleTol, "||T|| != 2");
  o.check(std::abs(a.spectral_radius - 2.0) <= kExampleTol, "r(T) != 2");
  o.check(oracle::opnorm(a.polar_u - u_expected) <= kExampleTol, "polar factor differs");
  o.check(member(a, ClassId::normaloid), "normaloid should be true");
  o.check(member(a, ClassId::binormal), "binormal should be true");
  o.check(!member(a, ClassId::self_adjoint), "self_adjoint should be false");
  o.check(!member(a, ClassId::normal), "normal should be false");
  o.check(!member(a, ClassId::paranormal), "paranormal should be false");

  const ComplexMatrix v = from_rows(3, {1, 0, 0, 0, 0, 1, 0, 0, 0});
  ComplexMatrix vv = ComplexMatrix::Zero(3, 3), ww = ComplexMatrix::Zero(3, 3);
  vv(0, 0) = vv(2, 2) = 1.0;
  ww(0, 0) = ww(1, 1) = 1.0;
  o.check(oracle::opnorm(v.adjoint() * v - vv) <= kGramTol, "V*V != diag(1,0,1)");
  o.check(oracle::opnorm(v * v.adjoint() - ww) <= kGramTol, "VV* != diag(1,1,0)");
  const ClassReport b = classify(v);
  o.check(member(b, ClassId::partial_isometry), "partial_isometry should be true");
  o.check(member(b, ClassId::normaloid), "normaloid should be true");
  o.check(!member(b, ClassId::quasinormal), "quasinormal should be false");

  const double elapsed = seconds_since(start);
  o.check(elapsed < kLimitFixtures, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = "both examples reproduced in " + std::to_string(elapsed) + " s";
  return o;
}

Outcome two_by_two() {
  Outcome o;
  const auto start = Clock::now();
  const PropertyResult r = run_suite(TheoremId::TWO_BY_TWO_NORMALOID, 1000, 1);
  const double elapsed = seconds_since(start);
  o.check(r.failures == 0, std::to_string(r.failures) + " disagreements" +
                               (r.counterexample ? ": " + r.counterexample->detail : ""));
  o.check(r.skipped < kSkipFraction * r.trials, std::to_string(r.skipped) + " marginal skips");
  o.check(elapsed < kLimitTwoByTwo, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) {
    o.detail = "1000 trials, 0 disagreements, " + std::to_string(r.skipped) + " skipped, " +
               std::to_string(elapsed) + " s";
  }
  return o;
}

ComplexMatrix collapse_matrix(int i) {
  const int n = 2 + i % 4;
  const auto seed = static_cast<std::uint64_t>(1000 + i);
  switch (i % 8) {
    case 0: return gen_random(n, seed);
    case 1: return gen_normal(n, seed);
    case 2: return gen_binormal(n, seed);
    case 3: return gen_normaloid(n, seed);
    case 4: return gen_partial_isometry(n, n - 1, seed);
    case 5: return gen_quasinormal_partial_isometry(n, n - 1, seed);
    case 6: return gen_self_adjoint(n, seed);
    default: return gen_unitary(n, seed);
  }
}

Outcome finite_dim_collapse() {
  Outcome o;
  int checks = 0, skipped = 0, normal_count = 0;
  for (int i = 0; i < 300; ++i) {
    const ComplexMatrix t = collapse_matrix(i);
    const ClassVerdict nm = is_normal(t);
    normal_count += nm.member;
    for (double p : kGrid) {
      for (double r : kGrid) {
        const PencilCertificate c = check_abs_pr(t, p, r);
        if (c.marginal || nm.marginal) {
          ++skipped;
          continue;
        }
        ++checks;
        o.check(c.decision == nm.member, "matrix " + std::to_string(i) + " (p,r)=(" +
                                             std::to_string(p) + "," + std::to_string(r) +
                                             "): check_abs_pr and is_normal disagree");
      }
    }
  }
  o.check(skipped < kSkipFraction * (checks + skipped), std::to_string(skipped) + " skipped");
  for (const char* name : {"normaloid_self_adjoint_polar", "partial_isometry_not_quasinormal",
                           "normaloid_square_partial_isometry"}) {
    const ComplexMatrix t = fixture(name).matrix;
    for (double p : kGrid) {
      for (double r : kGrid) {
        const PencilCertificate c = check_abs_pr(t, p, r);
        o.check(!c.decision, std::string(name) + " passes check_abs_pr");
        o.check(c.witness_vector.has_value(), std::string(name) + " has no witness");
        if (c.witness_vector) {
          const double replay = oracle::abs_pr_gap(t, p, r, *c.witness_vector);
          o.check(replay <= -kWitnessViolation,
                  std::string(name) + " witness replays to " + std::to_string(replay));
        }
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(checks) + " checks over 300 matrices (" +
               std::to_string(normal_count) + " normal), 0 violations, " +
               std::to_string(skipped) + " skipped; 27 fixture witnesses replayed";
  }
  return o;
}

ComplexMatrix oracle_matrix(int i) {
  const int n = 1 + i % 3;
  const auto seed = static_cast<std::uint64_t>(5000 + i);
  switch (i % 4) {
    case 0:
    case 1: return gen_random(n, seed);
    case 2: return gen_normal(n, seed);
    default: return gen_binormal(n, seed);
  }
}

// Normal plus a 1e-3 relative perturbation. The negative region is a cap far
// smaller than the sampler's resolution, so refutations are replayed instead.
ComplexMatrix near_normal_matrix(int i) {
  const int n = 2 + i % 2;
  const auto seed = static_cast<std::uint64_t>(7000 + i);
  Rng rng(seed);
  const ComplexMatrix e = random_gaussian(rng, n);
  const ComplexMatrix t = gen_normal(n, seed);
  return t + 1e-3 * operator_norm(t) * e / operator_norm(e);
}

Outcome dual_method() {
  Outcome o;
  const auto start = Clock::now();
  ToleranceConfig cfg;
  int disagreements = 0, marginal = 0, refutations = 0, members = 0;
  for (int i = 0; i < 200; ++i) {
    const ComplexMatrix t = oracle_matrix(i);
    const double p = kGrid[static_cast<std::size_t>(i % 3)];
    const double r = kGrid[static_cast<std::size_t>((i / 3) % 3)];
    const PencilCertificate sphere = check_abs_pr_sphere(t, p, r, cfg);
    const PencilCertificate dense = dense_oracle(abs_pr_problem(t, p, r, cfg), cfg);
    if (sphere.marginal || dense.marginal) {
      ++marginal;
    } else if (sphere.decision != dense.decision) {
      ++disagreements;
    }
    members += sphere.decision;
    const PencilCertificate grid = check_abs_pr_lambda_grid(t, p, r, cfg);
    if (!grid.decision) {
      ++refutations;
      o.check(!sphere.decision && sphere.witness_vector.has_value(),
              "grid refutation of matrix " + std::to_string(i) + " not confirmed by the sphere");
    }
    if (!grid.marginal && !sphere.marginal && grid.decision && !sphere.decision &&
        grid.margin > 10.0 * grid.threshold) {
      o.check(false, "grid and sphere margins have opposite signs on matrix " + std::to_string(i));
    }
  }
  int replayed = 0;
  for (int i = 0; i < 60; ++i) {
    const ComplexMatrix t = near_normal_matrix(i);
    const double p = kGrid[static_cast<std::size_t>(i % 3)];
    const double r = kGrid[static_cast<std::size_t>((i / 3) % 3)];
    const PencilCertificate sphere = check_abs_pr_sphere(t, p, r, cfg);
    if (sphere.decision || sphere.marginal) continue;
    ++replayed;
    o.check(oracle::abs_pr_gap(t, p, r, *sphere.witness_vector) < -sphere.threshold,
            "near-normal witness " + std::to_string(i) + " not confirmed by the oracle");
  }
  const double elapsed = seconds_since(start);
  o.check(disagreements == 0, std::to_string(disagreements) + " non-marginal disagreements");
  o.check(elapsed < kLimitOracle, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) {
    o.detail = "200 matrices (" + std::to_string(members) + " members), 0 disagreements, " +
               std::to_string(marginal) + " marginal, " + std::to_string(refutations) +
               " grid refutations confirmed, " + std::to_string(replayed) +
               " near-normal witnesses replayed, " + std::to_string(elapsed) + " s";
  }
  return o;
}

Outcome identity_suites() {
  Outcome o;
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + i % 5;
    const auto seed = static_cast<std::uint64_t>(9000 + i);
    ComplexMatrix t;
    switch (i % 3) {
      case 0: t = gen_random(n, seed); break;
      case 1: t = gen_partial_isometry(n, n - 1 - i % 2, seed) * gen_random(n, seed + 1); break;
      default: t = gen_normal(n, seed); break;
    }
    auto within = [&](double res, const std::string& what) {
      worst = std::max(worst, res);
      o.check(res <= kIdentityTol, what + " residual " + std::to_string(res) + " on matrix " +
                                       std::to_string(i));
    };
    for (double alpha : {0.3, 0.5, 1.0, 2.0, 3.7}) {
      within(fundamental_identity_residual(t, alpha), "T|T|^a = |T*|^a T");
    }
    for (double s : {1.0, 1.5, 2.0, 3.0}) within(trans_equiv_residual(t, s), "transform square");
    for (double q : {0.5, 1.0, 2.0, 3.0}) {
      within(generalized_transform(t, q).residuals.at("polar_q"), "|T*|^q = U|T|^qU*");
    }
  }
  if (o.pass) o.detail = "300 matrices, worst residual " + format_double(worst);
  return o;
}

Outcome theorem_suites() {
  Outcome o;
  const auto start = Clock::now();
  const std::array<TheoremId, 9> ids{
      TheoremId::SELF_ADJOINT_CHAR,     TheoremId::NTH_ROOT_NORMAL,
      TheoremId::BINORMAL_HYPONORMAL,   TheoremId::POWER_INEQUALITY,
      TheoremId::PARTIAL_ISOMETRY_CHAR, TheoremId::ASCENT_ONE,
      TheoremId::ROOT_PARTIAL_ISOMETRY, TheoremId::MONOTONICITY,
      TheoremId::CHAIN_CONSISTENCY};
  int skipped = 0;
  for (TheoremId id : ids) {
    const PropertyResult r = run_suite(id, 200, 1);
    skipped += r.skipped;
    o.check(r.failures == 0, std::string(to_string(id)) + ": " + std::to_string(r.failures) +
                                 " failures" +
                                 (r.counterexample ? " (" + r.counterexample->detail + ")" : ""));
    o.check(!r.skip_alarm(), std::string(to_string(id)) + ": skip alarm");
  }
  // Each boundary matrix keeps its weaker class and a partial-isometry square;
  // absolute-(p,r)-paranormality is the only hypothesis that fails.
  struct Boundary {
    const char* name;
    ClassId weaker;
  };
  for (const Boundary& rm : {Boundary{"normaloid_square_partial_isometry", ClassId::normaloid},
                           Boundary{"binormal_nilpotent_scaled", ClassId::binormal},
                           Boundary{"posinormal_involution", ClassId::posinormal}}) {
    const ComplexMatrix t = fixture(rm.name).matrix;
    const ClassReport report = classify(t);
    o.check(report.member(rm.weaker), std::string(rm.name) + ": weaker class fails");
    o.check(is_partial_isometry(t * t).member, std::string(rm.name) + ": T^2 not a PI");
    o.check(!report.member(ClassId::partial_isometry), std::string(rm.name) + ": T is a PI");
    for (const ClassVerdict* v : report.find(ClassId::absolute_pr_paranormal)) {
      o.check(!v->member, std::string(rm.name) + ": absolute-(p,r) holds");
    }
  }
  const double elapsed = seconds_since(start);
  o.check(elapsed < kLimitSuites, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) {
    o.detail = "9 suites x 200 trials, 0 failures, " + std::to_string(skipped) +
               " skipped, 3 boundary matrices, " + std::to_string(elapsed) + " s";
  }
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NORMALOID_CLI) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "normaloid_acceptance";
  fs::create_directories(dir);
  const fs::path a = dir / "run_a.json", b = dir / "run_b.json";
  const std::string args = "verify --suite all --trials 200 --seed 1 --out ";
  const int code_a = run_cli(args + a.string());
  const int code_b = run_cli(args + b.string());
  o.check(code_a == 0 && code_b == 0,
          "verify exit codes " + std::to_string(code_a) + ", " + std::to_string(code_b));
  const std::string ta = slurp(a), tb = slurp(b);
  o.check(!ta.empty(), "empty results file");
  o.check(ta == tb, "results files differ");
  if (o.pass) o.detail = "two runs, " + std::to_string(ta.size()) + " identical bytes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"fixture goldens", fixture_goldens},
      {"2x2 normaloid iff normal", two_by_two},
      {"finite-dimensional collapse", finite_dim_collapse},
      {"sphere vs dense oracle", dual_method},
      {"identity residuals", identity_suites},
      {"theorem suites", theorem_suites},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: "
              << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
