#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "normaloid/errors.hpp"
#include "normaloid/generators.hpp"
#include "normaloid/linalg.hpp"
#include "normaloid/pencil.hpp"
#include "oracle.hpp"

using namespace normaloid;

namespace {

constexpr std::array<double, 3> kGrid{0.5, 1.0, 2.0};

const ComplexMatrix& example() {
  static const ComplexMatrix t = from_rows(3, {2, 0, 0, 0, 0, 2, 0, 1, 0});
  return t;
}

}  // namespace

TEST(Pencil, GridIsLogSpacedOnNormalizedRange) {
  const auto grid = lambda_grid(2.0, 5);
  ASSERT_EQ(grid.size(), 5u);
  EXPECT_NEAR(grid.front(), 4e-6, 1e-20);
  EXPECT_NEAR(grid.back(), 4.0, 1e-14);
  for (std::size_t i = 2; i < grid.size(); ++i) {
    EXPECT_NEAR(grid[i] / grid[i - 1], grid[1] / grid[0], 1e-12);
  }
}

TEST(Pencil, ZeroMatrixPencilIsPowerOfLambda) {
  const ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  for (const auto& row : pencil_scan(z, 2.0, 1.0, 7)) {
    EXPECT_NEAR(row.min_eig, 2.0 * std::pow(row.lambda, 3.0), 1e-15);
  }
}

TEST(Pencil, NormalMatrixScanIsNonNegative) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  for (double p : kGrid)
    for (double r : kGrid)
      for (const auto& row : pencil_scan(d, p, r, 50)) {
        EXPECT_GE(row.min_eig, -1e-9 * std::max(1.0, std::pow(row.lambda, p + r)));
      }
}

TEST(Pencil, ExampleHasNegativeGridRow) {
  const auto rows = pencil_scan(example(), 1.0, 1.0, 50);
  EXPECT_TRUE(std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.min_eig < 0; }));
  const std::string csv = pencil_scan_csv(rows);
  EXPECT_EQ(csv.rfind("lambda,min_eig\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 51);
}

// At the minimizing lambda the pencil quadratic form equals r f(x).
TEST(Pencil, PencilFormReducesToSphereObjective) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix t = gen_random(3, seed) / 3.0;
    const double p = kGrid[seed % 3], r = kGrid[(seed / 3) % 3];
    const SphereProblem prob = abs_pr_problem(t, p, r);
    oracle::SphereSampler sampler(3, static_cast<unsigned>(seed));
    const ComplexVector x = sampler.next();
    const double norm = operator_norm(t);
    const double b = (x.adjoint() * prob.B * x)(0, 0).real();
    const double lambda = std::pow(b, 1.0 / r) * norm * norm;
    const ComplexMatrix m = pencil_matrix(t, p, r, lambda);
    const double form = (x.adjoint() * m * x)(0, 0).real() / std::pow(norm, 2.0 * (p + r));
    EXPECT_NEAR(form, r * sphere_objective(prob, x), 1e-12);
    // Any other lambda gives a larger value.
    const ComplexMatrix other = pencil_matrix(t, p, r, 1.3 * lambda);
    EXPECT_GE((x.adjoint() * other * x)(0, 0).real() / std::pow(norm, 2.0 * (p + r)),
              form - 1e-12);
  }
}

TEST(Pencil, SphereObjectiveMatchesDefinition) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix t = gen_random(3, seed);
    const double p = kGrid[seed % 3], r = kGrid[(seed / 3) % 3];
    oracle::SphereSampler sampler(3, 100 + static_cast<unsigned>(seed));
    const ComplexVector x = sampler.next();
    EXPECT_NEAR(abs_pr_margin_at(t, p, r, x), oracle::abs_pr_gap(t, p, r, x), 1e-10);
    EXPECT_NEAR(sphere_objective(abs_pr_problem(t, p, r), x), oracle::abs_pr_gap(t, p, r, x),
                1e-10);
  }
}

TEST(Pencil, ExampleMarginsAndWitnessReplay) {
  for (double p : kGrid) {
    for (double r : kGrid) {
      const PencilCertificate c = check_abs_pr(example(), p, r);
      EXPECT_FALSE(c.decision);
      ASSERT_TRUE(c.witness_vector.has_value());
      const double replay = oracle::abs_pr_gap(example(), p, r, *c.witness_vector);
      EXPECT_NEAR(replay, c.margin, 1e-9);
      EXPECT_LE(replay, -1e-6);
      // The sampled oracle never beats the optimizer by more than tolerance.
      const auto sampled = oracle::sample_min(3, 20000, 7, [&](const ComplexVector& x) {
        return oracle::abs_pr_gap(example(), p, r, x);
      });
      EXPECT_GE(sampled.value, c.margin - 1e-9);
    }
  }
}

TEST(Pencil, SphereAgreesWithIndependentSampling) {
  ToleranceConfig cfg;
  int disagreements = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const ComplexMatrix t = seed % 2 == 0 ? gen_random(n, seed) : gen_normal(n, seed);
    const double p = kGrid[seed % 3], r = kGrid[(seed / 3) % 3];
    const PencilCertificate c = check_abs_pr_sphere(t, p, r, cfg);
    const auto sampled = oracle::sample_min(n, 20000, static_cast<unsigned>(seed),
                                            [&](const ComplexVector& x) {
                                              return oracle::abs_pr_gap(t, p, r, x);
                                            });
    EXPECT_GE(sampled.value, c.margin - 1e-9);
    if (sampled.value < -10 * cfg.psd_tol && c.decision) ++disagreements;
    if (c.decision) EXPECT_GE(sampled.value, -cfg.psd_tol);
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(Pencil, DenseOracleAgreesWithSphere) {
  ToleranceConfig cfg;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const ComplexMatrix t = seed % 3 == 0 ? gen_normal(2, seed) : gen_random(2 + seed % 2, seed);
    const SphereProblem prob = abs_pr_problem(t, 1.0, 1.0, cfg);
    const PencilCertificate sphere = minimize_on_sphere(prob, cfg);
    const PencilCertificate dense = dense_oracle(prob, cfg, 50000);
    EXPECT_EQ(dense.method, PencilMethod::dense_oracle);
    if (!sphere.marginal && !dense.marginal) EXPECT_EQ(sphere.decision, dense.decision);
    EXPECT_GE(dense.margin, sphere.margin - 1e-9);
  }
}

TEST(Pencil, DenseOracleScalarAndVectorIsaAgree) {
  const SphereProblem prob = abs_pr_problem(example(), 1.0, 2.0);
  const PencilCertificate a = dense_oracle(prob, {}, 20000, kernels::Isa::scalar);
  const PencilCertificate b = dense_oracle(prob, {}, 20000, kernels::detect_isa());
  EXPECT_NEAR(a.margin, b.margin, 1e-12);
}

TEST(Pencil, GridRefutationsAreConfirmedBySphere) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ComplexMatrix t = gen_random(3, seed);
    const double p = kGrid[seed % 3], r = kGrid[(seed / 3) % 3];
    const PencilCertificate grid = check_abs_pr_lambda_grid(t, p, r);
    if (grid.decision) continue;
    const PencilCertificate sphere = check_abs_pr_sphere(t, p, r);
    EXPECT_FALSE(sphere.decision);
    ASSERT_TRUE(grid.witness_lambda.has_value());
  }
}

TEST(Pencil, ParanormalOnExample) {
  const PencilCertificate c = check_paranormal(example());
  EXPECT_FALSE(c.decision);
  ASSERT_TRUE(c.witness_vector.has_value());
  EXPECT_LT(oracle::paranormal_gap(example(), *c.witness_vector), -1e-6);
  EXPECT_TRUE(check_paranormal(gen_normal(3, 1)).decision);
}

TEST(Pencil, BinormalScalarCriterion) {
  const BinormalScalarResult res = binormal_scalar_check(example(), 1.0, 1.0);
  EXPECT_FALSE(res.decision);
  EXPECT_LT(res.margin, -0.1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix t = gen_binormal(3, seed);
    const double p = kGrid[seed % 3], r = kGrid[(seed / 3) % 3];
    const BinormalScalarResult scalar = binormal_scalar_check(t, p, r);
    const PencilCertificate sphere = check_abs_pr_sphere(t, p, r);
    if (!sphere.marginal) EXPECT_EQ(scalar.decision, sphere.decision) << "seed " << seed;
  }
  EXPECT_THROW(binormal_scalar_check(gen_random(3, 1), 1.0, 1.0), NotBinormal);
}

TEST(Pencil, MarginalBand) {
  EXPECT_TRUE(in_marginal_band(-1e-9, 1e-9));
  EXPECT_FALSE(in_marginal_band(-1e-11, 1e-9));
  EXPECT_FALSE(in_marginal_band(-1e-7, 1e-9));
  EXPECT_FALSE(in_marginal_band(0.0, 1e-9));
}

TEST(Pencil, RejectsBadParameters) {
  EXPECT_THROW(abs_pr_problem(example(), 0.0, 1.0), InvalidParameter);
  EXPECT_THROW(pencil_matrix(example(), 1.0, 1.0, -1.0), InvalidParameter);
  EXPECT_THROW(k_paranormal_problem(example(), 0), InvalidParameter);
}
