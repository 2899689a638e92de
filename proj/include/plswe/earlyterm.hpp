#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plswe/bounds.hpp"
#include "plswe/error.hpp"
#include "plswe/errors.hpp"
#include "plswe/keyeq.hpp"

namespace plswe {

// Alg1: fixed tau, deterministic count.   Alg2: fixed tau, ceil(tau/n).
// Alg3: rate rho, deterministic count.    Alg4: rate rho, rho/n.
enum class Algorithm { Alg1, Alg2, Alg3, Alg4 };
enum class CandidateStrategy { Exhaustive, TwoCandidates };

const char* to_string(Algorithm a) noexcept;
const char* to_string(CandidateStrategy s) noexcept;

struct TerminationConfig {
  Algorithm mode = Algorithm::Alg1;
  DegreeContext ctx;
  ErrorBudget budget = FixedBudget{};
  CandidateStrategy strategy = CandidateStrategy::Exhaustive;
  int max_L = 100000;
  /// When set, every reconstructed candidate is checked against A v = d b.
  const PLSInstance* certifier = nullptr;

  /// Throws InvalidArgument when the budget kind does not match the mode,
  /// RateOutOfRange for a bad rate.
  void validate() const;
};

struct Attempt {
  int L = 0;
  int nu = 0;
  int theta = 0;
  bool check = false;

  friend bool operator==(const Attempt&, const Attempt&) = default;
};

struct Failure {
  Errc code = Errc::EmptySolutionSpace;
  std::string message;
};

struct TerminationReport {
  std::variant<RationalSolution, Failure> outcome;
  int L_stop = 0;
  std::vector<Attempt> attempts;
  std::optional<int> predicted_L_stop;

  bool solved() const noexcept { return std::holds_alternative<RationalSolution>(outcome); }
  const RationalSolution& solution() const { return std::get<RationalSolution>(outcome); }
};

/// Parameters (nu, theta) tried when the base count is `base`.
/// Exhaustive: every pair with eval_count_base(nu, theta) == base, nu
/// ascending, then theta. TwoCandidates: (base-(D-1), base-(N-1)) and
/// (base-degA, base-degb), with the dominated one dropped, coordinates below
/// 1 dropped and duplicates merged.
std::vector<KeyEqParams> enumerate_candidates(const DegreeContext& ctx, int base, CandidateStrategy strategy);

/// Runs the chosen driver against the stream, consuming exactly L_stop
/// evaluations. Reconstruction failures end the run with a Failure outcome;
/// BudgetViolated (the stream made more errors than declared) and
/// MaxLExceeded are thrown.
TerminationReport run_early_termination(const TerminationConfig& cfg, EvaluationStream& stream);

/// Stopping point the driver should reach on this stream, from the
/// closed-form predictions. Computed on a copy, so the stream is untouched.
std::optional<int> predict_stop(const TerminationConfig& cfg, const EvaluationStream& stream);

/// Alg1: L_stop equals the predicted fixed point. Alg2: L_stop is at most
/// that of its fixed point. Alg3/Alg4: L_stop is within the closed-form
/// ceiling and, given the actual rate, within the sensitivity ceiling.
bool compare_against_bound(const TerminationReport& report, const TerminationConfig& cfg, int degv, int degd,
                           std::optional<Rational> rho_actual = std::nullopt);

}  // namespace plswe
