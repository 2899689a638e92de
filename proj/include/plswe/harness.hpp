#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plswe/bounds.hpp"
#include "plswe/earlyterm.hpp"
#include "plswe/keyeq.hpp"

namespace plswe {

enum class CountRule { KPSW, GLZ };
enum class ErrorModel { None, Uniform, FixedSchedule, Structured1, Structured2, RateBounded };

const char* to_string(CountRule r) noexcept;
const char* to_string(ErrorModel m) noexcept;
/// Inverse of to_string; throws InvalidArgument.
CountRule parse_count_rule(const std::string& s);
ErrorModel parse_error_model(const std::string& s);
Algorithm parse_algorithm(const std::string& s);
CandidateStrategy parse_strategy(const std::string& s);

struct ExperimentSpec {
  std::uint64_t q = 10007;
  int n = 2;
  int degA = 1;
  int degb = 1;

  ErrorModel model = ErrorModel::Uniform;
  int errors = 0;                // |E| for support-based models
  Rational error_rate{0};        // actual rate for RateBounded

  // Decoder knowledge. Bounds default to the Cramer bounds of (n, degA, degb).
  std::optional<int> N;
  std::optional<int> D;
  int tau = 0;
  CountRule rule = CountRule::GLZ;
  std::optional<KeyEqParams> params;  // defaults to (N + tau, D + tau)
  std::optional<int> L;               // overrides the count rule

  // Early termination (run_termination_experiment only).
  Algorithm algorithm = Algorithm::Alg1;
  CandidateStrategy strategy = CandidateStrategy::Exhaustive;
  Rational rho{0};

  int trials = 100;
  std::uint64_t seed = 0;
  int threads = 1;

  /// Throws InvalidArgument (or NotPrime / RateOutOfRange) on bad fields.
  void validate() const;
  std::uint64_t trial_seed(std::size_t trial) const noexcept { return seed + trial; }
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  int errors = 0;
  int L = 0;
  bool success = false;
  bool recovered = false;
  bool stop_ok = true;
  std::string outcome;
  int L_stop = 0;
  double bound = 0.0;
};

struct ExperimentReport {
  std::string experiment;
  ExperimentSpec spec;
  int trials = 0;
  int successes = 0;
  int failures = 0;
  double empirical_failure_rate = 0.0;
  double theoretical_bound = 0.0;
  double sigma = 0.0;
  double threshold = 0.0;
  int recovery_failures = 0;
  int stop_violations = 0;
  std::map<int, int> stop_point_histogram;
  double mean_L_stop = 0.0;
  double wall_time = 0.0;
  std::optional<std::string> aborted;
  std::vector<TrialRecord> records;

  bool within_threshold() const noexcept { return empirical_failure_rate <= threshold; }
  /// Structured text document. wall_time is included only on request so
  /// that identical specs give byte-identical output by default.
  std::string to_json(bool include_wall_time = false) const;
  /// One row per trial: trial, seed, errors, L, outcome, L_stop.
  std::string to_csv() const;
};

/// Per trial: random instance, random points, planted errors on a random
/// support of size spec.errors, key equations at spec's parameters; a
/// failure is a solution space that is not <x^i Lambda v, x^i Lambda d>.
/// The bound is 0 for the deterministic count and theta/q otherwise.
ExperimentReport run_structure_experiment(const ExperimentSpec& spec);

/// Per trial: the chosen driver end to end on a fresh stream; a failure is
/// any outcome other than the planted (v, d). Stopping points are scored
/// with compare_against_bound.
ExperimentReport run_termination_experiment(const ExperimentSpec& spec);

}  // namespace plswe
