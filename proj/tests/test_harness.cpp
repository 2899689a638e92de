#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "plswe/error.hpp"
#include "plswe/harness.hpp"

using namespace plswe;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.q = 101;
  s.n = 2;
  s.degA = 1;
  s.degb = 1;
  s.model = ErrorModel::Uniform;
  s.errors = 2;
  s.tau = 2;
  s.rule = CountRule::GLZ;
  s.trials = 60;
  s.seed = 42;
  return s;
}

}  // namespace

TEST(Parsing, NamesRoundTrip) {
  for (auto r : {CountRule::KPSW, CountRule::GLZ}) EXPECT_EQ(parse_count_rule(to_string(r)), r);
  for (auto m : {ErrorModel::None, ErrorModel::Uniform, ErrorModel::FixedSchedule, ErrorModel::Structured1,
                 ErrorModel::Structured2, ErrorModel::RateBounded})
    EXPECT_EQ(parse_error_model(to_string(m)), m);
  for (auto a : {Algorithm::Alg1, Algorithm::Alg2, Algorithm::Alg3, Algorithm::Alg4})
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  for (auto s : {CandidateStrategy::Exhaustive, CandidateStrategy::TwoCandidates})
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_THROW(parse_count_rule("KPSW"), Error);
  EXPECT_THROW(parse_error_model("burst"), Error);
  EXPECT_THROW(parse_algorithm("alg5"), Error);
  EXPECT_THROW(parse_strategy("both"), Error);
}

TEST(Spec, Validation) {
  auto s = small_spec();
  EXPECT_NO_THROW(s.validate());
  s.q = 100;
  EXPECT_THROW(s.validate(), Error);
  s = small_spec();
  s.trials = 0;
  EXPECT_THROW(s.validate(), Error);
  s = small_spec();
  s.tau = -1;
  EXPECT_THROW(s.validate(), Error);
  s = small_spec();
  s.rho = Rational(1, 2);
  s.algorithm = Algorithm::Alg3;
  EXPECT_THROW(s.validate(), Error);
}

TEST(Structure, DeterministicAndThreadIndependent) {
  auto s = small_spec();
  const auto a = run_structure_experiment(s);
  const auto b = run_structure_experiment(s);
  s.threads = 3;
  const auto c = run_structure_experiment(s);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.to_json(), c.to_json());
  EXPECT_EQ(a.to_csv(), c.to_csv());
  EXPECT_EQ(a.trials, 60);
  EXPECT_EQ(a.successes + a.failures, a.trials);
  EXPECT_DOUBLE_EQ(a.theoretical_bound, static_cast<double>(1 + 2 + 2) / 101.0);
}

TEST(Structure, DeterministicCountNeverFails) {
  auto s = small_spec();
  s.rule = CountRule::KPSW;
  s.trials = 200;
  for (auto m : {ErrorModel::Uniform, ErrorModel::FixedSchedule, ErrorModel::Structured1, ErrorModel::Structured2}) {
    s.model = m;
    const auto r = run_structure_experiment(s);
    EXPECT_FALSE(r.aborted) << *r.aborted;
    EXPECT_EQ(r.failures, 0) << to_string(m);
    EXPECT_EQ(r.recovery_failures, 0) << to_string(m);
    EXPECT_EQ(r.theoretical_bound, 0.0);
  }
}

TEST(Structure, NoErrorsNeverFails) {
  auto s = small_spec();
  s.tau = 0;
  s.errors = 0;
  s.model = ErrorModel::None;
  const auto r = run_structure_experiment(s);
  EXPECT_EQ(r.failures, 0);
  EXPECT_EQ(r.theoretical_bound, static_cast<double>(1 + 2) / 101.0);
}

TEST(Structure, RejectsRateModel) {
  auto s = small_spec();
  s.model = ErrorModel::RateBounded;
  const auto r = run_structure_experiment(s);
  ASSERT_TRUE(r.aborted);
  EXPECT_EQ(r.trials, 0);
}

TEST(Termination, Alg1HitsPredictionEveryTrial) {
  ExperimentSpec s;
  s.q = 10007;
  s.n = 2;
  s.degA = 2;
  s.degb = 1;
  s.model = ErrorModel::FixedSchedule;
  s.errors = 2;
  s.tau = 2;
  s.algorithm = Algorithm::Alg1;
  s.trials = 40;
  s.seed = 3;
  const auto r = run_termination_experiment(s);
  EXPECT_FALSE(r.aborted);
  EXPECT_EQ(r.failures, 0);
  EXPECT_EQ(r.stop_violations, 0);
  int hist_total = 0;
  for (const auto& [L, k] : r.stop_point_histogram) hist_total += k;
  EXPECT_EQ(hist_total, 40);
}

TEST(Termination, BudgetViolationAborts) {
  ExperimentSpec s;
  s.q = 10007;
  s.n = 1;
  s.model = ErrorModel::FixedSchedule;
  s.errors = 3;
  s.tau = 0;
  s.trials = 5;
  const auto r = run_termination_experiment(s);
  ASSERT_TRUE(r.aborted);
  EXPECT_NE(r.aborted->find("trial 0"), std::string::npos);
  EXPECT_EQ(r.trials, 0);
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_TRUE(j.contains("aborted"));
}

TEST(Termination, RateModelWithinCeilings) {
  ExperimentSpec s;
  s.q = 10007;
  s.n = 2;
  s.degA = 1;
  s.degb = 1;
  s.model = ErrorModel::RateBounded;
  s.error_rate = Rational(1, 8);
  s.rho = Rational(1, 4);
  s.algorithm = Algorithm::Alg3;
  s.strategy = CandidateStrategy::TwoCandidates;
  s.trials = 30;
  const auto r = run_termination_experiment(s);
  EXPECT_FALSE(r.aborted);
  EXPECT_EQ(r.failures, 0);
  EXPECT_EQ(r.stop_violations, 0);
}

TEST(Report, JsonAndCsvShape) {
  auto s = small_spec();
  s.trials = 5;
  const auto r = run_structure_experiment(s);
  const auto j = nlohmann::json::parse(r.to_json());
  for (const char* k : {"experiment", "spec", "trials", "successes", "failures", "empirical_failure_rate",
                        "theoretical_bound", "sigma", "threshold", "threshold_rule", "within_threshold"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_FALSE(j.contains("wall_time"));
  EXPECT_TRUE(nlohmann::json::parse(r.to_json(true)).contains("wall_time"));
  std::istringstream csv(r.to_csv());
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "trial,seed,errors,L,outcome,L_stop");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Report, ThresholdArithmetic) {
  auto s = small_spec();
  s.trials = 400;
  const auto r = run_structure_experiment(s);
  const double b = r.theoretical_bound;
  EXPECT_NEAR(r.sigma, std::sqrt(b * (1 - b) / 400), 1e-12);
  EXPECT_NEAR(r.threshold, b + 3 * r.sigma, 1e-12);
  EXPECT_DOUBLE_EQ(r.empirical_failure_rate, r.failures / 400.0);
}
