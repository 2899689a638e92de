#include "plswe/earlyterm.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <utility>

namespace plswe {

const char* to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Alg1: return "alg1";
    case Algorithm::Alg2: return "alg2";
    case Algorithm::Alg3: return "alg3";
    case Algorithm::Alg4: return "alg4";
  }
  return "?";
}

const char* to_string(CandidateStrategy s) noexcept {
  return s == CandidateStrategy::Exhaustive ? "exhaustive" : "two";
}

namespace {

bool fixed_mode(Algorithm a) { return a == Algorithm::Alg1 || a == Algorithm::Alg2; }

int radius_divisor(const TerminationConfig& cfg) {
  return cfg.mode == Algorithm::Alg2 || cfg.mode == Algorithm::Alg4 ? cfg.ctx.n : 1;
}

int fixed_additive(const TerminationConfig& cfg) {
  const int tau = std::get<FixedBudget>(cfg.budget).tau;
  return cfg.mode == Algorithm::Alg1 ? tau : ceil_div(tau, cfg.ctx.n);
}

bool dominated(const KeyEqParams& a, const KeyEqParams& b) {
  return a.nu <= b.nu && a.theta <= b.theta && !(a == b);
}

// Kernel dimension only grows with (nu, theta), so a level where every
// maximal candidate fails is a level where every candidate fails.
std::vector<KeyEqParams> maximal(const std::vector<KeyEqParams>& cs) {
  std::vector<KeyEqParams> out;
  for (const auto& c : cs) {
    bool dom = false;
    for (const auto& o : cs) dom = dom || dominated(c, o);
    if (!dom) out.push_back(c);
  }
  return out;
}

}  // namespace

void TerminationConfig::validate() const {
  ctx.validate();
  if (max_L < 1) throw Error(Errc::InvalidArgument, "max_L must be >= 1");
  if (fixed_mode(mode)) {
    const auto* b = std::get_if<FixedBudget>(&budget);
    if (b == nullptr) throw Error(Errc::InvalidArgument, std::string(to_string(mode)) + " needs a fixed error bound");
    if (b->tau < 0) throw Error(Errc::InvalidArgument, "tau must be >= 0");
  } else {
    const auto* b = std::get_if<LinearRateBudget>(&budget);
    if (b == nullptr) throw Error(Errc::InvalidArgument, std::string(to_string(mode)) + " needs an error rate");
    check_rate(b->rho);
  }
}

std::vector<KeyEqParams> enumerate_candidates(const DegreeContext& ctx, int base, CandidateStrategy strategy) {
  std::vector<KeyEqParams> out;
  if (strategy == CandidateStrategy::Exhaustive) {
    for (int nu = 1; nu <= base; ++nu)
      for (int theta = 1; theta <= base; ++theta)
        if (eval_count_base(ctx, nu, theta) == base) out.push_back({nu, theta});
    return out;
  }
  const KeyEqParams c1{base - (ctx.D - 1), base - (ctx.N - 1)};
  const KeyEqParams c2{base - ctx.degA, base - ctx.degb};
  std::vector<KeyEqParams> picks;
  if (ctx.D - 1 <= ctx.degA && ctx.N - 1 <= ctx.degb) {
    picks = {c1};
  } else if (ctx.D - 1 >= ctx.degA && ctx.N - 1 >= ctx.degb) {
    picks = {c2};
  } else {
    picks = {c1, c2};
  }
  for (const auto& c : picks) {
    if (c.nu < 1 || c.theta < 1) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

std::optional<int> predict_stop(const TerminationConfig& cfg, const EvaluationStream& stream) {
  EvaluationStream probe = stream;
  const GroundTruth& t = probe.truth();
  const ErrorCountFn errors = [&probe](int L) { return probe.error_count(static_cast<std::size_t>(L)); };
  try {
    if (fixed_mode(cfg.mode)) return predict_stop_fixed(cfg.ctx, fixed_additive(cfg), t.degv, t.degd, errors);
    const Rational rho = std::get<LinearRateBudget>(cfg.budget).rho;
    return predict_stop_linear(cfg.ctx, rho, t.degv, t.degd, radius_divisor(cfg), errors);
  } catch (const Error&) {
    return std::nullopt;
  }
}

TerminationReport run_early_termination(const TerminationConfig& cfg, EvaluationStream& stream) {
  cfg.validate();
  const DegreeContext& ctx = cfg.ctx;
  if (static_cast<std::size_t>(ctx.n) != stream.instance().n) {
    throw Error(Errc::InvalidArgument, "context dimension differs from the stream's");
  }
  TerminationReport report{Failure{}, 0, {}, predict_stop(cfg, stream)};
  std::set<std::tuple<int, int, int>> tried;

  // One round: L evaluations, candidates at the given base count, error
  // budget tau. Returns true once the driver has stopped.
  auto round = [&](int L, int base, int tau) {
    if (L > cfg.max_L) throw Error(Errc::MaxLExceeded, "no stop up to L = " + std::to_string(cfg.max_L));
    const auto uL = static_cast<std::size_t>(L);
    const int e = stream.error_count(uL);
    if (e > tau) {
      throw Error(Errc::BudgetViolated,
                  std::to_string(e) + " errors among " + std::to_string(L) + " evaluations, bound " +
                      std::to_string(tau));
    }
    std::vector<KeyEqParams> cands = enumerate_candidates(ctx, base, cfg.strategy);
    std::erase_if(cands, [&](const KeyEqParams& c) { return tried.contains({L, c.nu, c.theta}); });
    if (cands.empty()) return false;
    const EvaluationTable Y = stream.prefix(uL);

    auto attempt = [&](const KeyEqParams& c) {
      tried.insert({L, c.nu, c.theta});
      const bool ok = check(Y, c);
      report.attempts.push_back({L, c.nu, c.theta, ok});
      return ok;
    };
    auto finish = [&](const KeyEqParams& c) {
      report.L_stop = L;
      try {
        report.outcome = find_solution(Y, c, cfg.certifier);
      } catch (const Error& err) {
        report.outcome = Failure{err.code(), err.what()};
      }
      return true;
    };

    if (cfg.strategy == CandidateStrategy::TwoCandidates || cands.size() <= 2) {
      for (const auto& c : cands)
        if (attempt(c)) return finish(c);
      return false;
    }
    bool any = false;
    for (const auto& c : maximal(cands)) any = attempt(c) || any;
    if (!any) return false;
    for (const auto& c : cands) {
      if (tried.contains({L, c.nu, c.theta})) {
        const auto it = std::find_if(report.attempts.rbegin(), report.attempts.rend(), [&](const Attempt& a) {
          return a.L == L && a.nu == c.nu && a.theta == c.theta;
        });
        if (it->check) return finish(c);
        continue;
      }
      if (attempt(c)) return finish(c);
    }
    return false;
  };

  if (fixed_mode(cfg.mode)) {
    const int tau = std::get<FixedBudget>(cfg.budget).tau;
    const int additive = fixed_additive(cfg);
    for (int L = eval_count_base(ctx, 1, 1) + additive;; ++L)
      if (round(L, L - additive, tau)) break;
  } else {
    const Rational rho = std::get<LinearRateBudget>(cfg.budget).rho;
    const int div = radius_divisor(cfg);
    for (int lnum = eval_count_base(ctx, 1, 1) + 1;; ++lnum) {
      const LinearCounts lc = linear_counts_from_base(lnum - 1, rho, div);
      if (round(lc.L, lnum - 1, lc.tau)) break;
    }
  }
  return report;
}

bool compare_against_bound(const TerminationReport& report, const TerminationConfig& cfg, int degv, int degd,
                           std::optional<Rational> rho_actual) {
  if (!report.solved()) return false;
  switch (cfg.mode) {
    case Algorithm::Alg1:
      return report.predicted_L_stop && report.L_stop == *report.predicted_L_stop;
    case Algorithm::Alg2:
      return report.predicted_L_stop && report.L_stop <= *report.predicted_L_stop;
    case Algorithm::Alg3:
    case Algorithm::Alg4: {
      const Rational rho = std::get<LinearRateBudget>(cfg.budget).rho;
      const int div = radius_divisor(cfg);
      if (report.L_stop > stop_upper_bound_linear(cfg.ctx, rho, degv, degd, div)) return false;
      if (rho_actual && report.L_stop > stop_upper_bound_sensitive(cfg.ctx, rho, *rho_actual, degv, degd, div)) {
        return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace plswe
