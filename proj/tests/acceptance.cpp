// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "plswe/earlyterm.hpp"
#include "plswe/error.hpp"
#include "plswe/harness.hpp"
#include "plswe/instance.hpp"
#include "plswe/io.hpp"

using namespace plswe;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

Support random_positions(std::size_t count, std::size_t range, std::mt19937_64& rng) {
  std::vector<std::size_t> all(range);
  for (std::size_t j = 0; j < range; ++j) all[j] = j;
  std::vector<std::size_t> pick;
  std::sample(all.begin(), all.end(), std::back_inserter(pick), static_cast<std::ptrdiff_t>(count), rng);
  return {pick.begin(), pick.end()};
}

TerminationConfig make_config(Algorithm a, const DegreeContext& ctx, ErrorBudget b, CandidateStrategy s) {
  TerminationConfig c;
  c.mode = a;
  c.ctx = ctx;
  c.budget = b;
  c.strategy = s;
  return c;
}

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

// 1. Deterministic count: zero structural or recovery failures under
//    worst-case structured errors and uniform errors.
Verdict criterion1() {
  Verdict v;
  int trials = 0, case1 = 0, case2 = 0, uniform = 0, bad = 0;
  for (int n = 1; n <= 3; ++n)
    for (int dA = 0; dA <= 3; ++dA)
      for (int db = 0; db <= 3; ++db)
        for (int tau = 0; tau <= 3; ++tau) {
          const DegreeContext ctx = cramer_context(static_cast<std::size_t>(n), dA, db);
          const int nu = ctx.N + tau, theta = ctx.D + tau;
          const int rfr = std::max(ctx.N - 1 + theta, ctx.D - 1 + nu);
          const int la = std::max(ctx.degA + nu, ctx.degb + theta);
          std::vector<ErrorModel> models{ErrorModel::Uniform};
          if (rfr <= la) models.push_back(ErrorModel::Structured1);
          if (la <= rfr) models.push_back(ErrorModel::Structured2);
          for (ErrorModel m : models) {
            ExperimentSpec s;
            s.q = 10007;
            s.n = n;
            s.degA = dA;
            s.degb = db;
            s.model = m;
            s.errors = tau;
            s.tau = tau;
            s.rule = CountRule::KPSW;
            s.trials = 3;
            s.seed = static_cast<std::uint64_t>(1000 * n + 100 * dA + 10 * db + tau);
            const auto r = run_structure_experiment(s);
            trials += r.trials;
            (m == ErrorModel::Uniform ? uniform : m == ErrorModel::Structured1 ? case1 : case2) += r.trials;
            if (r.aborted || r.failures > 0 || r.recovery_failures > 0) {
              ++bad;
              if (v.pass) v.detail = fmt("context n=%d degA=%d degb=%d tau=%d model=%s failed; ", n, dA, db, tau, to_string(m));
              v.pass = false;
            }
          }
        }
  v.pass = v.pass && trials >= 1000 && case1 > 0 && case2 > 0;
  v.detail += fmt("%d trials (case1 %d, case2 %d, uniform %d), %d failing configurations", trials, case1, case2,
                  uniform, bad);
  return v;
}

// 2. Reduced count with uniform errors: rate within bound + 3 sigma.
Verdict criterion2() {
  Verdict v;
  ExperimentSpec s;
  s.q = 10007;
  s.n = 2;
  s.degA = 1;
  s.degb = 1;
  s.model = ErrorModel::Uniform;
  s.errors = 2;
  s.tau = 2;
  s.rule = CountRule::GLZ;
  s.trials = 10000;
  s.seed = 2024;
  const auto a = run_structure_experiment(s);
  const bool a_ok = !a.aborted && a.trials >= 10000 && a.within_threshold();

  s.n = 3;
  s.errors = s.tau = 3;
  s.seed = 4048;
  const auto a3 = run_structure_experiment(s);
  const bool a3_ok = !a3.aborted && a3.trials >= 10000 && a3.within_threshold();

  ExperimentSpec t = s;
  t.q = 101;
  t.n = 2;
  t.errors = t.tau = 2;  // D + tau = 3 + 2 = 5
  t.seed = 77;
  const auto b = run_structure_experiment(t);
  const bool b_ok = !b.aborted && b.failures > 0 && b.within_threshold();

  bool c_ok = true;
  int contexts = 0;
  for (int n = 2; n <= 4; ++n)
    for (int dA = 0; dA <= 3; ++dA)
      for (int db = 0; db <= 3; ++db)
        for (int tau = 2; tau <= 8; ++tau) {
          const DegreeContext ctx = cramer_context(static_cast<std::size_t>(n), dA, db);
          c_ok = c_ok && l_glz(ctx, tau) < l_kpsw(ctx, tau);
          ++contexts;
        }
  v.pass = a_ok && a3_ok && b_ok && c_ok;
  v.detail = fmt("(a) q=10007 n=2: %d/%d = %.5f <= %.5f; n=3: %d/%d = %.5f <= %.5f; "
                 "(b) q=101: %d/%d = %.4f <= %.4f; (c) L_GLZ < L_KPSW in %d/%d contexts",
                 a.failures, a.trials, a.empirical_failure_rate, a.threshold, a3.failures, a3.trials,
                 a3.empirical_failure_rate, a3.threshold, b.failures, b.trials, b.empirical_failure_rate, b.threshold,
                 c_ok ? contexts : -1, contexts);
  return v;
}

// 3. Alg1 stops exactly at the least fixed point of the error schedule.
Verdict criterion3() {
  Verdict v;
  const PrimeField F(10007);
  int runs = 0, exact = 0;
  for (std::uint64_t seed = 0; seed < 540; ++seed) {
    std::mt19937_64 rng(seed * 7919 + 1);
    const int n = 1 + static_cast<int>(seed % 3);
    const int dA = static_cast<int>(rng() % 3), db = static_cast<int>(rng() % 3);
    const int tau = static_cast<int>(rng() % 4);
    const auto inst = generate_instance(F, static_cast<std::size_t>(n), dA, db, seed);
    const auto truth = reference_solve(inst);
    const DegreeContext ctx = cramer_context(inst);
    const auto count = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(tau + 1));
    const Support sup = random_positions(count, static_cast<std::size_t>(l_kpsw(ctx, tau)), rng);
    EvaluationStream stream(inst, truth, FixedSchedule{sup, rng()}, PointMode::Random, rng());
    auto cfg = make_config(Algorithm::Alg1, ctx, FixedBudget{tau}, CandidateStrategy::Exhaustive);
    ++runs;
    try {
      const auto r = run_early_termination(cfg, stream);
      auto errs = [&](int L) {
        int c = 0;
        for (std::size_t j : sup) c += static_cast<int>(j) < L;
        return c;
      };
      const int base = eval_count_base(ctx, truth.degv, truth.degd);
      const int want = oracle::least_fixed_point(eval_count_base(ctx, 1, 1) + tau, 100000, base, 1 + tau, errs);
      if (r.solved() && r.solution() == truth.solution && r.L_stop == want &&
          r.L_stop == base + errs(r.L_stop) + 1 + tau) {
        ++exact;
      } else if (v.detail.empty()) {
        v.detail = fmt("seed %llu: L_stop %d, fixed point %d; ", static_cast<unsigned long long>(seed), r.L_stop, want);
      }
    } catch (const std::exception& e) {
      if (v.detail.empty()) v.detail = fmt("seed %llu threw %s; ", static_cast<unsigned long long>(seed), e.what());
    }
  }
  v.pass = runs >= 500 && exact == runs;
  v.detail += fmt("%d/%d runs stop at the fixed point", exact, runs);
  return v;
}

// 4. Overestimated budgets: Alg1 with no errors stops at L_ctx + 1 + tau;
//    Alg3 with actual rate rho' < rho stays within the sensitive ceiling.
Verdict criterion4() {
  Verdict v;
  const PrimeField F(10007);
  int a1 = 0, a1_ok = 0, a3 = 0, a3_ok = 0;
  const Rational rhos[] = {Rational(1, 10), Rational(1, 5), Rational(1, 4), Rational(1, 3)};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const auto inst = generate_instance(F, static_cast<std::size_t>(n), 1 + static_cast<int>(seed % 2),
                                        static_cast<int>(seed % 3), seed);
    const auto truth = reference_solve(inst);
    const DegreeContext ctx = cramer_context(inst);
    const int base = eval_count_base(ctx, truth.degv, truth.degd);
    {
      const int tau = static_cast<int>(seed % 5);
      EvaluationStream s(inst, truth, NoErrors{}, PointMode::Random, seed);
      const auto r = run_early_termination(make_config(Algorithm::Alg1, ctx, FixedBudget{tau}, CandidateStrategy::Exhaustive), s);
      ++a1;
      if (r.solved() && r.solution() == truth.solution && r.L_stop == base + 1 + tau) ++a1_ok;
    }
    {
      const Rational rho = rhos[seed % 4];
      const Rational actual = seed % 2 == 0 ? Rational(0) : rho / 2;
      EvaluationStream s(inst, truth, RateBounded{actual, seed}, PointMode::Random, seed);
      const auto r =
          run_early_termination(make_config(Algorithm::Alg3, ctx, LinearRateBudget{rho}, CandidateStrategy::Exhaustive), s);
      const Rational denom = Rational(1) - actual - rho;
      const int ceiling = static_cast<int>(floor_nonneg(Rational(base + 2) / denom));
      ++a3;
      if (r.solved() && r.solution() == truth.solution && r.L_stop <= ceiling) ++a3_ok;
    }
  }
  v.pass = a1 == a1_ok && a3 == a3_ok;
  v.detail = fmt("Alg1 exact %d/%d, Alg3 within sensitive ceiling %d/%d", a1_ok, a1, a3_ok, a3);
  return v;
}

// 5. Linear-bound ceilings for Alg3 and Alg4, and paired mean ordering.
Verdict criterion5() {
  Verdict v;
  const PrimeField F(10007);
  int runs = 0, within = 0, wrong3 = 0;
  double sum3 = 0, sum4 = 0;
  int paired = 0;
  const Rational rhos[] = {Rational(1, 10), Rational(1, 5), Rational(1, 4), Rational(1, 3)};
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const auto inst = generate_instance(F, static_cast<std::size_t>(n), 1 + static_cast<int>(seed % 3),
                                        static_cast<int>(seed % 2), seed + 50000);
    const auto truth = reference_solve(inst);
    const DegreeContext ctx = cramer_context(inst);
    const Rational rho = rhos[seed % 4];
    const int base = eval_count_base(ctx, truth.degv, truth.degd);
    const EvaluationStream proto(inst, truth, RateBounded{rho, seed}, PointMode::Random, seed);
    int stops[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
      const Algorithm a = k == 0 ? Algorithm::Alg3 : Algorithm::Alg4;
      EvaluationStream s = proto;
      const auto r = run_early_termination(make_config(a, ctx, LinearRateBudget{rho}, CandidateStrategy::Exhaustive), s);
      const Rational frac = k == 0 ? Rational(2) : Rational(1) + Rational(1, n);
      const int ceiling = static_cast<int>(floor_nonneg(Rational(base + 2) / (Rational(1) - frac * rho)));
      ++runs;
      if (r.L_stop <= ceiling) ++within;
      if (k == 0 && !(r.solved() && r.solution() == truth.solution)) ++wrong3;
      stops[k] = r.L_stop;
    }
    if (n >= 2) {
      sum3 += stops[0];
      sum4 += stops[1];
      ++paired;
    }
  }
  const double m3 = sum3 / paired, m4 = sum4 / paired;
  v.pass = within == runs && wrong3 == 0 && m4 <= m3;
  v.detail = fmt("%d/%d runs within ceiling, Alg3 wrong %d; n>=2 paired means Alg4 %.2f <= Alg3 %.2f over %d pairs",
                 within, runs, wrong3, m4, m3, paired);
  return v;
}

// 6. Alg2/Alg4 failure rate within bound + 3 sigma; two candidates never
//    stop later than exhaustive enumeration.
Verdict criterion6() {
  Verdict v;
  ExperimentSpec s;
  s.q = 10007;
  s.n = 2;
  s.degA = 1;
  s.degb = 1;
  s.model = ErrorModel::Uniform;
  s.errors = 2;
  s.tau = 2;
  s.algorithm = Algorithm::Alg2;
  s.strategy = CandidateStrategy::TwoCandidates;
  s.trials = 1000;
  s.seed = 606;
  const auto r2 = run_termination_experiment(s);
  s.n = 3;
  s.model = ErrorModel::RateBounded;
  s.error_rate = Rational(1, 5);
  s.rho = Rational(1, 5);
  s.algorithm = Algorithm::Alg4;
  s.seed = 707;
  const auto r4 = run_termination_experiment(s);
  const bool rates = !r2.aborted && !r4.aborted && r2.within_threshold() && r4.within_threshold() &&
                     r2.stop_violations == 0 && r4.stop_violations == 0;

  const PrimeField F(10007);
  int cmp = 0, later = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const auto inst = generate_instance(F, static_cast<std::size_t>(n), static_cast<int>(seed % 4),
                                        static_cast<int>((seed / 4) % 3), seed + 90000);
    const auto truth = reference_solve(inst);
    const DegreeContext ctx = cramer_context(inst);
    std::mt19937_64 rng(seed);
    const int tau = static_cast<int>(seed % 4);
    const Support sup = random_positions(static_cast<std::size_t>(tau), static_cast<std::size_t>(l_kpsw(ctx, tau)), rng);
    for (int k = 0; k < 2; ++k) {
      const EvaluationStream proto =
          k == 0 ? EvaluationStream(inst, truth, FixedSchedule{sup, seed}, PointMode::Random, seed)
                 : EvaluationStream(inst, truth, RateBounded{Rational(1, 4), seed}, PointMode::Random, seed);
      const Algorithm a = k == 0 ? Algorithm::Alg1 : Algorithm::Alg3;
      const ErrorBudget b = k == 0 ? ErrorBudget{FixedBudget{tau}} : ErrorBudget{LinearRateBudget{Rational(1, 4)}};
      EvaluationStream se = proto, st = proto;
      const auto re = run_early_termination(make_config(a, ctx, b, CandidateStrategy::Exhaustive), se);
      const auto rt = run_early_termination(make_config(a, ctx, b, CandidateStrategy::TwoCandidates), st);
      ++cmp;
      if (rt.L_stop > re.L_stop) ++later;
    }
  }
  v.pass = rates && later == 0;
  v.detail = fmt("Alg2 %d/%d = %.4f <= %.4f (bound %.4f); Alg4 %d/%d = %.4f <= %.4f (bound %.4f); "
                 "two-candidate later than exhaustive in %d/%d deterministic runs",
                 r2.failures, r2.trials, r2.empirical_failure_rate, r2.threshold, r2.theoretical_bound, r4.failures,
                 r4.trials, r4.empirical_failure_rate, r4.threshold, r4.theoretical_bound, later, cmp);
  return v;
}

// 7. Production kernel equals brute-force enumeration over F_5.
Verdict criterion7() {
  Verdict v;
  const PrimeField F(5);
  PolyMatrix A(1, 1, F);
  A(0, 0) = Polynomial::from_ints(F, {1, 1});
  const auto inst = PLSInstance::from_parts(A, PolyVector({Polynomial::from_ints(F, {2, 1})}));
  const auto truth = reference_solve(inst);
  PointSequence seq = PointSequence::sequential(inst, 0);
  const std::vector<Fq> all = seq.take(4);
  int tables = 0, checks = 0, mismatches = 0;
  for (std::size_t L = 1; L <= 4; ++L) {
    const std::vector<Fq> pts(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(L));
    const EvaluationTable honest = honest_evaluate(inst, truth, pts);
    std::vector<EvaluationTable> ys{honest};
    for (std::size_t j = 0; j < L; ++j)
      for (std::uint64_t y = 0; y < 5; ++y) {
        if (y == honest.columns[j][0].value) continue;
        EvaluationTable c = honest;
        c.columns[j][0] = Fq{y};
        ys.push_back(c);
      }
    for (const auto& Y : ys) {
      ++tables;
      for (int nu = 1; nu <= 2; ++nu)
        for (int theta = 1; theta <= 2; ++theta) {
          const KeyEqParams p{nu, theta};
          const SolutionSpace S = solve_key_equations(Y, p);
          std::vector<oracle::Vec> basis;
          for (const auto& e : S.basis) basis.push_back(oracle::values(pack_element(e, p)));
          const auto width = static_cast<std::size_t>(nu + theta);
          ++checks;
          if (oracle::span(basis, width, 5) != oracle::brute_key_space(Y, nu, theta)) ++mismatches;
        }
    }
  }
  v.pass = mismatches == 0;
  v.detail = fmt("%d tables, %d (nu, theta) spaces compared, %d mismatches", tables, checks, mismatches);
  return v;
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

// 8. gen -> decode (tau = 0) reproduces the ground truth byte-exactly;
//    identical seeds give identical Monte-Carlo reports.
Verdict criterion8() {
  Verdict v;
  int exact = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const std::string path = std::string(PLSWE_TEST_TMP) + "/acceptance_gen.json";
    const std::vector<std::string> gen{"gen", "--q", "10007", "--n", std::to_string(1 + seed % 3), "--degA",
                                       std::to_string(seed % 4), "--degb", std::to_string((seed / 4) % 4), "--seed",
                                       std::to_string(seed)};
    auto with_out = gen;
    with_out.insert(with_out.end(), {"--out", path});
    const CliRun g = cli(with_out);
    const CliRun g2 = cli(gen);
    const CliRun d = cli({"decode", "--instance", path, "--tau", "0"});
    if (g.code != 0 || d.code != 0) continue;
    const Json inst = Json::parse(read_text(path));
    const Json dec = Json::parse(d.out);
    if (g2.out == read_text(path) && dec["solution"].dump() == inst["truth"].dump() && dec["matches_truth"] == true)
      ++exact;
  }
  const std::vector<std::string> mc1{"montecarlo", "--experiment", "structure", "--q", "101", "--n", "2",
                                     "--tau", "2", "--errors", "2", "--trials", "300", "--seed", "11"};
  const std::vector<std::string> mc2{"montecarlo", "--experiment", "termination", "--q", "10007", "--n", "2",
                                     "--model", "uniform", "--errors", "2", "--tau", "2", "--mode", "alg2",
                                     "--trials", "100", "--seed", "12"};
  bool same = true;
  for (const auto& args : {mc1, mc2}) {
    const CliRun a = cli(args), b = cli(args);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "2"});
    const CliRun c = cli(threaded);
    // --threads is not part of the report, so it must be byte-identical too.
    same = same && !a.out.empty() && a.out == b.out && a.out == c.out;
  }
  v.pass = exact == 100 && same;
  v.detail = fmt("%d/100 byte-exact round trips; Monte-Carlo reports %s", exact, same ? "identical" : "differ");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("CRITERION %zu %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
