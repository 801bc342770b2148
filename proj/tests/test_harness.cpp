#include <gtest/gtest.h>

#include "normaloid/errors.hpp"
#include "normaloid/harness.hpp"
#include "normaloid/random.hpp"

using namespace normaloid;

TEST(Harness, IdsRoundTrip) {
  EXPECT_EQ(all_theorem_ids().size(), 14u);
  for (TheoremId id : all_theorem_ids()) EXPECT_EQ(theorem_id_from_string(to_string(id)), id);
  EXPECT_THROW(theorem_id_from_string("BOGUS"), UnknownTheoremId);
}

TEST(Harness, RejectsZeroTrials) {
  EXPECT_THROW(run_suite(TheoremId::ASCENT_ONE, 0, 1), InvalidParameter);
}

class EverySuite : public ::testing::TestWithParam<TheoremId> {};

TEST_P(EverySuite, PassesWithControls) {
  const PropertyResult r = run_suite(GetParam(), 20, 5);
  EXPECT_EQ(r.failures, 0) << (r.counterexample ? r.counterexample->detail : "");
  EXPECT_FALSE(r.counterexample.has_value());
  EXPECT_GE(r.controls, 1);
  EXPECT_FALSE(r.fixtures.empty());
  EXPECT_FALSE(r.skip_alarm());
  EXPECT_EQ(r.trials, 20);
}

INSTANTIATE_TEST_SUITE_P(Harness, EverySuite, ::testing::ValuesIn(all_theorem_ids()),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Harness, DeterministicSerialization) {
  const auto a = results_to_json({run_suite(TheoremId::MONOTONICITY, 10, 3)});
  const auto b = results_to_json({run_suite(TheoremId::MONOTONICITY, 10, 3)});
  EXPECT_EQ(dump_json(a), dump_json(b));
  EXPECT_EQ(a[0]["generator"], std::string(kGeneratorName));
  EXPECT_EQ(a[0]["theorem_id"], "MONOTONICITY");
}

TEST(Harness, SeedsChangeTrials) {
  const auto a = dump_json(to_json(run_suite(TheoremId::TWO_BY_TWO_NORMALOID, 30, 1)));
  const auto b = dump_json(to_json(run_suite(TheoremId::TWO_BY_TWO_NORMALOID, 30, 2)));
  EXPECT_NE(a, b);
}

TEST(Harness, CounterexampleSerialization) {
  PropertyResult r;
  r.theorem_id = TheoremId::ASCENT_ONE;
  r.trials = 1;
  r.failures = 1;
  r.counterexample = Counterexample{"trial 0", ComplexMatrix::Identity(2, 2), Json{{"p", 1.0}},
                                    "synthetic"};
  const Json j = to_json(r);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["counterexample"]["matrix"]["n"], 2);
  EXPECT_EQ(j["counterexample"]["parameters"]["p"], 1.0);
}

TEST(Harness, SkipAlarmThreshold) {
  PropertyResult r;
  r.trials = 100;
  r.skipped = 4;
  EXPECT_FALSE(r.skip_alarm());
  r.skipped = 5;
  EXPECT_TRUE(r.skip_alarm());
}
