#include "plswe/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "plswe/errors.hpp"
#include "plswe/instance.hpp"

namespace plswe {

const char* to_string(CountRule r) noexcept { return r == CountRule::KPSW ? "kpsw" : "glz"; }

const char* to_string(ErrorModel m) noexcept {
  switch (m) {
    case ErrorModel::None: return "none";
    case ErrorModel::Uniform: return "uniform";
    case ErrorModel::FixedSchedule: return "schedule";
    case ErrorModel::Structured1: return "case1";
    case ErrorModel::Structured2: return "case2";
    case ErrorModel::RateBounded: return "rate";
  }
  return "?";
}

CountRule parse_count_rule(const std::string& s) {
  if (s == "kpsw") return CountRule::KPSW;
  if (s == "glz") return CountRule::GLZ;
  throw Error(Errc::InvalidArgument, "unknown bound '" + s + "' (kpsw, glz)");
}

ErrorModel parse_error_model(const std::string& s) {
  for (ErrorModel m : {ErrorModel::None, ErrorModel::Uniform, ErrorModel::FixedSchedule, ErrorModel::Structured1,
                       ErrorModel::Structured2, ErrorModel::RateBounded})
    if (s == to_string(m)) return m;
  throw Error(Errc::InvalidArgument, "unknown error model '" + s + "' (none, uniform, schedule, case1, case2, rate)");
}

Algorithm parse_algorithm(const std::string& s) {
  for (Algorithm a : {Algorithm::Alg1, Algorithm::Alg2, Algorithm::Alg3, Algorithm::Alg4})
    if (s == to_string(a)) return a;
  throw Error(Errc::InvalidArgument, "unknown mode '" + s + "' (alg1..alg4)");
}

CandidateStrategy parse_strategy(const std::string& s) {
  if (s == "exhaustive") return CandidateStrategy::Exhaustive;
  if (s == "two") return CandidateStrategy::TwoCandidates;
  throw Error(Errc::InvalidArgument, "unknown strategy '" + s + "' (exhaustive, two)");
}

void ExperimentSpec::validate() const {
  PrimeField{q};
  if (n < 1 || degA < 0 || degb < 0) throw Error(Errc::InvalidArgument, "need n >= 1 and degrees >= 0");
  if (trials < 1) throw Error(Errc::InvalidArgument, "trials must be >= 1");
  if (threads < 1) throw Error(Errc::InvalidArgument, "threads must be >= 1");
  if (errors < 0 || tau < 0) throw Error(Errc::InvalidArgument, "error counts must be >= 0");
  if ((N && *N < 1) || (D && *D < 1)) throw Error(Errc::InvalidArgument, "N and D must be >= 1");
  if (params) params->validate();
  if (L && *L < 1) throw Error(Errc::InvalidArgument, "L must be >= 1");
  if (model == ErrorModel::RateBounded) check_rate(error_rate);
  if (algorithm == Algorithm::Alg3 || algorithm == Algorithm::Alg4) check_rate(rho);
}

namespace {

using Clock = std::chrono::steady_clock;

DegreeContext decoder_context(const ExperimentSpec& spec) {
  DegreeContext ctx = cramer_context(static_cast<std::size_t>(spec.n), spec.degA, spec.degb);
  if (spec.N) ctx.N = *spec.N;
  if (spec.D) ctx.D = *spec.D;
  return ctx;
}

Support random_support(std::size_t count, std::size_t range, std::mt19937_64& rng) {
  if (count > range) throw Error(Errc::InvalidArgument, "more errors than evaluation points");
  std::vector<std::size_t> all(range);
  for (std::size_t j = 0; j < range; ++j) all[j] = j;
  std::vector<std::size_t> pick;
  std::sample(all.begin(), all.end(), std::back_inserter(pick), static_cast<std::ptrdiff_t>(count), rng);
  return {pick.begin(), pick.end()};
}

// Runs body(i) for every trial index; results land at their index, so the
// aggregate does not depend on the number of threads.
std::vector<std::exception_ptr> for_each_trial(int trials, int threads, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(trials));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < errs.size();) {
      try {
        body(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return errs;
}

void aggregate(ExperimentReport& rep, std::vector<TrialRecord> recs, const std::vector<std::exception_ptr>& errs) {
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (errs[i]) {
      try {
        std::rethrow_exception(errs[i]);
      } catch (const std::exception& e) {
        rep.aborted = "trial " + std::to_string(i) + ": " + e.what();
      }
      recs.resize(i);
      break;
    }
  }
  rep.trials = static_cast<int>(recs.size());
  double stop_sum = 0;
  for (const auto& r : recs) {
    (r.success ? rep.successes : rep.failures) += 1;
    if (!r.recovered) ++rep.recovery_failures;
    if (!r.stop_ok) ++rep.stop_violations;
    rep.theoretical_bound = std::max(rep.theoretical_bound, r.bound);
    if (r.L_stop > 0) {
      ++rep.stop_point_histogram[r.L_stop];
      stop_sum += r.L_stop;
    }
  }
  if (rep.trials > 0) {
    rep.empirical_failure_rate = static_cast<double>(rep.failures) / rep.trials;
    rep.sigma = std::sqrt(std::clamp(rep.theoretical_bound, 0.0, 1.0) * (1 - std::clamp(rep.theoretical_bound, 0.0, 1.0)) /
                          rep.trials);
    rep.mean_L_stop = stop_sum / rep.trials;
  }
  rep.threshold = rep.theoretical_bound + 3 * rep.sigma;
  rep.records = std::move(recs);
}

}  // namespace

ExperimentReport run_structure_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto t0 = Clock::now();
  const PrimeField F(spec.q);
  const DegreeContext ctx = decoder_context(spec);
  const KeyEqParams params = spec.params.value_or(KeyEqParams{ctx.N + spec.tau, ctx.D + spec.tau});
  const int extra = spec.rule == CountRule::KPSW ? spec.tau : ceil_div(spec.tau, spec.n);
  const int L = spec.L.value_or(eval_count_base(ctx, params.nu, params.theta) + extra);
  const double bound = spec.rule == CountRule::KPSW ? 0.0 : static_cast<double>(params.theta) / static_cast<double>(spec.q);

  std::vector<TrialRecord> recs(static_cast<std::size_t>(spec.trials));
  auto errs = for_each_trial(spec.trials, spec.threads, [&](std::size_t i) {
    TrialRecord& r = recs[i];
    r.trial = i;
    r.seed = spec.trial_seed(i);
    r.L = L;
    r.bound = bound;
    std::mt19937_64 rng(r.seed);
    const PLSInstance inst = generate_instance(F, static_cast<std::size_t>(spec.n), spec.degA, spec.degb, r.seed);
    const GroundTruth truth = reference_solve(inst);
    PointSequence seq = PointSequence::random(inst, rng());
    const std::vector<Fq> points = seq.take(static_cast<std::size_t>(L));
    const Support support =
        spec.model == ErrorModel::None ? Support{} : random_support(static_cast<std::size_t>(spec.errors), points.size(), rng);
    r.errors = static_cast<int>(support.size());

    EvaluationTable Y = honest_evaluate(inst, truth, points);
    const Partition part = Partition::round_robin(support, inst.n);
    switch (spec.model) {
      case ErrorModel::None: break;
      case ErrorModel::Uniform: Y = inject_uniform(Y, support, rng()); break;
      case ErrorModel::FixedSchedule: {
        const std::uint64_t s = rng();
        for (std::size_t j : support) {
          EvaluationTable one = inject_uniform(Y, {j}, s);
          while (one.columns[j] == Y.columns[j]) one = inject_uniform(Y, {j}, rng());
          Y.columns[j] = one.columns[j];
        }
        break;
      }
      case ErrorModel::Structured1: Y = inject_structured_case1(truth, points, part); break;
      case ErrorModel::Structured2: Y = inject_structured_case2(inst, truth, points, part); break;
      case ErrorModel::RateBounded: throw Error(Errc::InvalidArgument, "rate-bounded errors need the termination experiment");
    }

    const SolutionSpace S = solve_key_equations(Y, params);
    const int d = delta(params.nu, params.theta, truth.degv, truth.degd, r.errors);
    const Polynomial lambda = error_locator(F, points, {support.begin(), support.end()});
    r.success = verify_space_structure(S, truth.solution, lambda, d);
    r.recovered = false;
    try {
      r.recovered = find_solution(S) == truth.solution;
    } catch (const Error&) {
    }
    r.outcome = r.success ? "structured" : "unstructured";
  });

  ExperimentReport rep;
  rep.experiment = "structure";
  rep.spec = spec;
  aggregate(rep, std::move(recs), errs);
  rep.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

ExperimentReport run_termination_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto t0 = Clock::now();
  const PrimeField F(spec.q);
  const DegreeContext ctx = decoder_context(spec);
  const bool fixed = spec.algorithm == Algorithm::Alg1 || spec.algorithm == Algorithm::Alg2;
  const bool random_counting = spec.algorithm == Algorithm::Alg2 || spec.algorithm == Algorithm::Alg4;

  std::vector<TrialRecord> recs(static_cast<std::size_t>(spec.trials));
  auto errs = for_each_trial(spec.trials, spec.threads, [&](std::size_t i) {
    TrialRecord& r = recs[i];
    r.trial = i;
    r.seed = spec.trial_seed(i);
    std::mt19937_64 rng(r.seed);
    PLSInstance inst = generate_instance(F, static_cast<std::size_t>(spec.n), spec.degA, spec.degb, r.seed);
    GroundTruth truth = reference_solve(inst);

    // Planted positions are drawn from the evaluations the fixed-bound
    // drivers can consume at most.
    const auto horizon = static_cast<std::size_t>(l_kpsw(ctx, std::max(spec.tau, spec.errors)));
    const auto E = static_cast<std::size_t>(spec.errors);
    ErrorProcess process = NoErrors{};
    switch (spec.model) {
      case ErrorModel::None: break;
      case ErrorModel::Uniform: process = UniformOnSupport{random_support(E, horizon, rng), rng()}; break;
      case ErrorModel::FixedSchedule: process = FixedSchedule{random_support(E, horizon, rng), rng()}; break;
      case ErrorModel::Structured1: process = StructuredCase1{random_support(E, horizon, rng)}; break;
      case ErrorModel::Structured2: process = StructuredCase2{random_support(E, horizon, rng)}; break;
      case ErrorModel::RateBounded: process = RateBounded{spec.error_rate, rng()}; break;
    }
    const std::uint64_t point_seed = rng();
    const int degv = truth.degv;
    const int degd = truth.degd;
    const RationalSolution planted = truth.solution;
    EvaluationStream stream(std::move(inst), std::move(truth), std::move(process), PointMode::Random, point_seed);

    TerminationConfig cfg;
    cfg.mode = spec.algorithm;
    cfg.ctx = ctx;
    cfg.strategy = spec.strategy;
    if (fixed) {
      cfg.budget = FixedBudget{spec.tau};
    } else {
      cfg.budget = LinearRateBudget{spec.rho};
    }
    const TerminationReport rep = run_early_termination(cfg, stream);
    r.L = rep.L_stop;
    r.L_stop = rep.L_stop;
    r.errors = stream.error_count(static_cast<std::size_t>(rep.L_stop));
    r.success = rep.solved() && rep.solution() == planted;
    r.recovered = r.success;
    r.outcome = rep.solved() ? (r.success ? "solved" : "wrong") : to_string(std::get<Failure>(rep.outcome).code);

    std::optional<Rational> rho_actual;
    if (!fixed && spec.model == ErrorModel::None) rho_actual = Rational(0);
    if (!fixed && spec.model == ErrorModel::RateBounded && spec.error_rate <= spec.rho) rho_actual = spec.error_rate;
    r.stop_ok = !rep.solved() || compare_against_bound(rep, cfg, degv, degd, rho_actual);

    if (random_counting) {
      const double e = r.errors;
      r.bound = 2.0 * (ctx.D + e + 1) * (std::max(degv, degd) + e + 1) / static_cast<double>(spec.q);
    }
  });

  ExperimentReport rep;
  rep.experiment = "termination";
  rep.spec = spec;
  aggregate(rep, std::move(recs), errs);
  rep.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

std::string ExperimentReport::to_json(bool include_wall_time) const {
  nlohmann::ordered_json s;
  s["q"] = spec.q;
  s["n"] = spec.n;
  s["degA"] = spec.degA;
  s["degb"] = spec.degb;
  s["model"] = to_string(spec.model);
  s["errors"] = spec.errors;
  if (spec.model == ErrorModel::RateBounded) s["error_rate"] = plswe::to_string(spec.error_rate);
  if (spec.N) s["N"] = *spec.N;
  if (spec.D) s["D"] = *spec.D;
  s["tau"] = spec.tau;
  if (experiment == "structure") {
    s["bound"] = to_string(spec.rule);
    if (spec.params) s["nu_theta"] = {spec.params->nu, spec.params->theta};
    if (spec.L) s["L"] = *spec.L;
  } else {
    s["mode"] = to_string(spec.algorithm);
    s["strategy"] = to_string(spec.strategy);
    if (spec.algorithm == Algorithm::Alg3 || spec.algorithm == Algorithm::Alg4) s["rho"] = plswe::to_string(spec.rho);
  }
  s["trials"] = spec.trials;
  s["seed"] = spec.seed;

  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["spec"] = s;
  j["trials"] = trials;
  j["successes"] = successes;
  j["failures"] = failures;
  j["empirical_failure_rate"] = empirical_failure_rate;
  j["theoretical_bound"] = theoretical_bound;
  j["sigma"] = sigma;
  j["threshold"] = threshold;
  j["threshold_rule"] = "theoretical_bound + 3 * sqrt(bound * (1 - bound) / trials)";
  j["within_threshold"] = within_threshold();
  j["recovery_failures"] = recovery_failures;
  j["stop_violations"] = stop_violations;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [L, c] : stop_point_histogram) hist[std::to_string(L)] = c;
  j["stop_point_histogram"] = hist;
  j["mean_L_stop"] = mean_L_stop;
  if (aborted) j["aborted"] = *aborted;
  if (include_wall_time) j["wall_time"] = wall_time;
  return j.dump(2) + "\n";
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "trial,seed,errors,L,outcome,L_stop\n";
  for (const auto& r : records)
    out << r.trial << ',' << r.seed << ',' << r.errors << ',' << r.L << ',' << r.outcome << ',' << r.L_stop << '\n';
  return out.str();
}

}  // namespace plswe
