#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "plswe/bounds.hpp"
#include "plswe/earlyterm.hpp"
#include "plswe/errors.hpp"
#include "plswe/harness.hpp"
#include "plswe/instance.hpp"
#include "plswe/io.hpp"

namespace plswe::cli {

namespace {

// Codes that mean the request itself was wrong rather than that decoding
// failed on valid input.
bool usage_error(Errc c) {
  switch (c) {
    case Errc::InvalidArgument:
    case Errc::NotPrime:
    case Errc::RateOutOfRange:
    case Errc::FieldTooSmall:
    case Errc::SupportOutOfRange:
    case Errc::BudgetViolated:
    case Errc::DegenerateSystem:
      return true;
    default:
      return false;
  }
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::size_t> parse_positions(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 1) throw UsageError("error positions are 1-based integers, got '" + item + "'");
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

InstanceFile load_instance(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

GroundTruth truth_of(const InstanceFile& f) { return f.truth ? *f.truth : reference_solve(f.instance); }

struct ErrorFlags {
  std::string positions;
  std::string model = "schedule";
  std::string rate;
  std::optional<std::uint64_t> seed;
};

void add_error_flags(CLI::App* cmd, ErrorFlags& e) {
  cmd->add_option("--errors", e.positions, "Corrupted positions, 1-based, comma separated");
  cmd->add_option("--model", e.model, "schedule | uniform | case1 | case2 | rate")
      ->check(CLI::IsMember({"schedule", "uniform", "case1", "case2", "rate", "none"}));
  cmd->add_option("--error-rate", e.rate, "Actual error rate p/q for --model rate");
  cmd->add_option("--seed", e.seed, "Seed for random corruptions and points");
}

ErrorProcess make_process(const ErrorFlags& e) {
  const std::vector<std::size_t> pos = parse_positions(e.positions);
  const Support support(pos.begin(), pos.end());
  const ErrorModel m = parse_error_model(e.model);
  const bool random = m == ErrorModel::Uniform || m == ErrorModel::FixedSchedule || m == ErrorModel::RateBounded;
  if (m == ErrorModel::RateBounded) {
    if (e.rate.empty()) throw UsageError("--model rate needs --error-rate");
    if (!e.seed) throw UsageError("--model rate needs --seed");
    return RateBounded{parse_rational(e.rate), *e.seed};
  }
  if (support.empty() || m == ErrorModel::None) return NoErrors{};
  if (random && !e.seed) throw UsageError("random corruptions need --seed");
  switch (m) {
    case ErrorModel::Uniform: return UniformOnSupport{support, *e.seed};
    case ErrorModel::FixedSchedule: return FixedSchedule{support, *e.seed};
    case ErrorModel::Structured1: return StructuredCase1{support};
    case ErrorModel::Structured2: return StructuredCase2{support};
    default: return NoErrors{};
  }
}

struct Context {
  std::ostream& out;
  std::ostream& err;
};

// ---- gen -------------------------------------------------------------------

struct GenFlags {
  std::uint64_t q = 0;
  int n = 1;
  int degA = 1;
  int degb = 0;
  std::optional<std::uint64_t> seed;
  std::string A;
  std::string b;
  std::string out;
};

int cmd_gen(const GenFlags& f, Context& io) {
  const PrimeField F(f.q);
  std::optional<PLSInstance> inst;
  if (!f.A.empty() || !f.b.empty()) {
    if (f.A.empty() || f.b.empty()) throw UsageError("explicit instances need both --A and --b");
    Json jA, jb;
    try {
      jA = Json::parse(f.A);
      jb = Json::parse(f.b);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("--A/--b must be JSON coefficient arrays: ") + e.what());
    }
    Json doc{{"q", f.q}, {"n", jA.size()}, {"A", jA}, {"b", jb}};
    inst = instance_from_json(doc).instance;
  } else {
    if (!f.seed) throw UsageError("gen needs --seed (or an explicit --A and --b)");
    inst = generate_instance(F, static_cast<std::size_t>(f.n), f.degA, f.degb, *f.seed);
  }
  const GroundTruth truth = reference_solve(*inst);
  const std::string text = instance_to_json(*inst, &truth).dump(2) + "\n";
  if (f.out.empty()) {
    io.out << text;
  } else {
    write_text(f.out, text);
  }
  return kSolved;
}

// ---- solve -----------------------------------------------------------------

int cmd_solve(const std::string& path, Context& io) {
  const InstanceFile f = load_instance(path);
  const GroundTruth t = reference_solve(f.instance);
  Json j;
  j["solution"] = to_json(t.solution);
  j["degv"] = t.degv;
  j["degd"] = t.degd;
  io.out << j.dump(2) << "\n";
  return kSolved;
}

// ---- decode ----------------------------------------------------------------

struct DecodeFlags {
  std::string instance;
  std::string evaluations;
  ErrorFlags errors;
  std::optional<int> N, D, nu, theta;
  int tau = 0;
  std::string bound = "kpsw";
};

DegreeContext context_for(const PLSInstance& inst, std::optional<int> N, std::optional<int> D) {
  DegreeContext ctx = cramer_context(inst);
  if (N) ctx.N = *N;
  if (D) ctx.D = *D;
  ctx.validate();
  return ctx;
}

int cmd_decode(const DecodeFlags& f, Context& io) {
  if (f.tau < 0) throw UsageError("tau must be >= 0");
  const InstanceFile file = load_instance(f.instance);
  const PLSInstance& inst = file.instance;
  const DegreeContext ctx = context_for(inst, f.N, f.D);
  const KeyEqParams params{f.nu.value_or(ctx.N + f.tau), f.theta.value_or(ctx.D + f.tau)};
  params.validate();
  const int extra = parse_count_rule(f.bound) == CountRule::KPSW ? f.tau : ceil_div(f.tau, ctx.n);
  const int L = eval_count_base(ctx, params.nu, params.theta) + extra;

  EvaluationTable Y{inst.field, inst.n, {}, {}};
  if (!f.evaluations.empty()) {
    if (!f.errors.positions.empty()) throw UsageError("--errors and --evaluations are exclusive");
    Json j;
    try {
      j = Json::parse(read_text(f.evaluations));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(f.evaluations + ": " + e.what());
    }
    Y = table_from_json(j);
    if (Y.field != inst.field || Y.n != inst.n) throw UsageError("evaluations do not match the instance");
    if (Y.size() < static_cast<std::size_t>(L)) {
      throw UsageError("need " + std::to_string(L) + " evaluations, file has " + std::to_string(Y.size()));
    }
    Y = Y.prefix(static_cast<std::size_t>(L));
  } else {
    EvaluationStream stream(inst, truth_of(file), make_process(f.errors));
    Y = stream.prefix(static_cast<std::size_t>(L));
  }

  Json j;
  j["L"] = L;
  j["nu"] = params.nu;
  j["theta"] = params.theta;
  try {
    const RationalSolution sol = find_solution(Y, params);
    j["outcome"] = "solved";
    j["solution"] = to_json(sol);
    if (file.truth) j["matches_truth"] = sol == file.truth->solution;
    io.out << j.dump(2) << "\n";
    return kSolved;
  } catch (const Error& e) {
    if (usage_error(e.code())) throw;
    j["outcome"] = "failure";
    j["error"] = to_string(e.code());
    j["message"] = e.what();
    io.out << j.dump(2) << "\n";
    return kDecodeFailure;
  }
}

// ---- earlyterm -------------------------------------------------------------

struct EarlyFlags {
  std::string instance;
  std::string mode;
  std::optional<int> tau;
  std::string rho;
  std::string strategy = "exhaustive";
  std::string points = "sequential";
  ErrorFlags errors;
  std::optional<int> N, D;
  int max_L = 100000;
};

int cmd_earlyterm(const EarlyFlags& f, Context& io) {
  const InstanceFile file = load_instance(f.instance);
  TerminationConfig cfg;
  cfg.mode = parse_algorithm(f.mode);
  cfg.ctx = context_for(file.instance, f.N, f.D);
  cfg.strategy = parse_strategy(f.strategy);
  cfg.max_L = f.max_L;
  const bool fixed = cfg.mode == Algorithm::Alg1 || cfg.mode == Algorithm::Alg2;
  if (fixed) {
    if (!f.tau || !f.rho.empty()) throw UsageError(std::string(to_string(cfg.mode)) + " takes --tau, not --rho");
    if (*f.tau < 0) throw UsageError("tau must be >= 0");
    cfg.budget = FixedBudget{*f.tau};
  } else {
    if (f.rho.empty() || f.tau) throw UsageError(std::string(to_string(cfg.mode)) + " takes --rho, not --tau");
    cfg.budget = LinearRateBudget{parse_rational(f.rho)};
  }
  cfg.validate();

  PointMode pm = PointMode::Sequential;
  if (f.points == "random") {
    if (!f.errors.seed) throw UsageError("--points random needs --seed");
    pm = PointMode::Random;
  }
  EvaluationStream stream(file.instance, truth_of(file), make_process(f.errors), pm,
                          f.errors.seed.value_or(0));
  const TerminationReport rep = run_early_termination(cfg, stream);

  Json j;
  j["mode"] = to_string(cfg.mode);
  j["strategy"] = to_string(cfg.strategy);
  const Json body = report_to_json(rep);
  for (const auto& [k, v] : body.items()) j[k] = v;
  j["errors_consumed"] = stream.error_count(static_cast<std::size_t>(rep.L_stop));
  bool ok = rep.solved();
  if (ok && file.truth) {
    const bool match = rep.solution() == file.truth->solution;
    j["matches_truth"] = match;
    ok = match;
  }
  io.out << j.dump(2) << "\n";
  return ok ? kSolved : kDecodeFailure;
}

// ---- bounds ----------------------------------------------------------------

struct BoundsFlags {
  int n = 1, N = 1, D = 1, degA = 0, degb = 0, tau = 0;
  std::optional<int> nu, theta, degv, degd;
  int errors = 0;
  std::string rho;
};

int cmd_bounds(const BoundsFlags& f, Context& io) {
  if (f.tau < 0) throw UsageError("tau must be >= 0");
  if (f.errors < 0) throw UsageError("errors must be >= 0");
  const DegreeContext ctx{f.n, f.N, f.D, f.degA, f.degb};
  ctx.validate();
  const int nu = f.nu.value_or(ctx.N + f.tau);
  const int theta = f.theta.value_or(ctx.D + f.tau);
  KeyEqParams{nu, theta}.validate();

  Json j;
  j["base"] = eval_count_base(ctx, ctx.N, ctx.D);
  j["L_KPSW"] = l_kpsw(ctx, f.tau);
  j["L_GLZ"] = l_glz(ctx, f.tau);
  j["nu"] = nu;
  j["theta"] = theta;
  j["base_nu_theta"] = eval_count_base(ctx, nu, theta);
  std::optional<Rational> rho;
  if (!f.rho.empty()) {
    rho = parse_rational(f.rho);
    check_rate(*rho);
    const LinearCounts a3 = linear_counts(ctx, *rho, nu, theta, 1);
    const LinearCounts a4 = linear_counts(ctx, *rho, nu, theta, ctx.n);
    j["rho"] = to_string(*rho);
    j["linear"] = {{"alg3", {{"L", a3.L}, {"tau", a3.tau}}}, {"alg4", {{"L", a4.L}, {"tau", a4.tau}}}};
  }
  if (f.degv || f.degd) {
    if (!f.degv || !f.degd) throw UsageError("--degv and --degd go together");
    const int e = f.errors;
    j["delta"] = delta(nu, theta, *f.degv, *f.degd, e);
    const ErrorCountFn errs = [e](int) { return e; };
    j["stop_alg1"] = predict_stop_fixed(ctx, f.tau, *f.degv, *f.degd, errs);
    j["stop_alg2"] = predict_stop_fixed(ctx, ceil_div(f.tau, ctx.n), *f.degv, *f.degd, errs);
    if (rho) {
      j["stop_ceiling_alg3"] = stop_upper_bound_linear(ctx, *rho, *f.degv, *f.degd, 1);
      j["stop_ceiling_alg4"] = stop_upper_bound_linear(ctx, *rho, *f.degv, *f.degd, ctx.n);
    }
  }
  io.out << j.dump(2) << "\n";
  return kSolved;
}

// ---- montecarlo ------------------------------------------------------------

const std::vector<std::string> kSpecKeys = {"q",    "n",     "degA", "degb",  "model", "errors", "error-rate",
                                            "N",    "D",     "tau",  "bound", "nu",    "theta",  "L",
                                            "mode", "strategy", "rho", "trials", "seed", "threads"};

struct MonteFlags {
  std::string experiment = "structure";
  std::string spec_file;
  std::map<std::string, std::string> values;
  std::string out;
  std::string csv;
  bool wall_time = false;
};

int to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw UsageError("--" + key + " expects an integer, got '" + v + "'");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-') {
    throw UsageError("--" + key + " expects a nonnegative integer, got '" + v + "'");
  }
  return x;
}

ExperimentSpec build_spec(const std::map<std::string, std::string>& kv) {
  ExperimentSpec s;
  if (!kv.contains("seed")) throw UsageError("montecarlo needs --seed");
  for (const auto& [k, v] : kv) {
    if (k == "q") s.q = to_u64(k, v);
    else if (k == "n") s.n = to_int(k, v);
    else if (k == "degA") s.degA = to_int(k, v);
    else if (k == "degb") s.degb = to_int(k, v);
    else if (k == "model") s.model = parse_error_model(v);
    else if (k == "errors") s.errors = to_int(k, v);
    else if (k == "error-rate") s.error_rate = parse_rational(v);
    else if (k == "N") s.N = to_int(k, v);
    else if (k == "D") s.D = to_int(k, v);
    else if (k == "tau") s.tau = to_int(k, v);
    else if (k == "bound") s.rule = parse_count_rule(v);
    else if (k == "L") s.L = to_int(k, v);
    else if (k == "mode") s.algorithm = parse_algorithm(v);
    else if (k == "strategy") s.strategy = parse_strategy(v);
    else if (k == "rho") s.rho = parse_rational(v);
    else if (k == "trials") s.trials = to_int(k, v);
    else if (k == "seed") s.seed = to_u64(k, v);
    else if (k == "threads") s.threads = to_int(k, v);
    else if (k != "nu" && k != "theta") throw UsageError("unknown spec key '" + k + "'");
  }
  if (kv.contains("nu") != kv.contains("theta")) throw UsageError("nu and theta go together");
  if (kv.contains("nu")) s.params = KeyEqParams{to_int("nu", kv.at("nu")), to_int("theta", kv.at("theta"))};
  s.validate();
  return s;
}

int cmd_montecarlo(const MonteFlags& f, Context& io) {
  std::map<std::string, std::string> kv;
  if (!f.spec_file.empty()) {
    Json j;
    try {
      j = Json::parse(read_text(f.spec_file));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(f.spec_file + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("spec file must hold an object");
    for (const auto& [k, v] : j.items()) kv[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  for (const auto& [k, v] : f.values)
    if (!v.empty()) kv[k] = v;
  const ExperimentSpec spec = build_spec(kv);

  const std::string exp = f.experiment == "theorem2" ? "structure" : f.experiment;
  const ExperimentReport rep =
      exp == "structure" ? run_structure_experiment(spec) : run_termination_experiment(spec);
  const std::string text = rep.to_json(f.wall_time);
  if (f.out.empty()) {
    io.out << text;
  } else {
    write_text(f.out, text);
  }
  if (!f.csv.empty()) write_text(f.csv, rep.to_csv());
  if (rep.aborted) {
    io.err << "aborted: " << *rep.aborted << "\n";
    return kDecodeFailure;
  }
  return rep.within_threshold() && rep.stop_violations == 0 ? kSolved : kDecodeFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial linear system solving with errors"};
  app.require_subcommand(1);
  Context io{out, err};
  std::function<int()> action;

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "Generate an instance with certified ground truth");
  g->add_option("--q", gen.q, "Field size (prime)")->required();
  g->add_option("--n", gen.n, "System dimension");
  g->add_option("--degA", gen.degA, "Degree bound for A");
  g->add_option("--degb", gen.degb, "Degree bound for b");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--A", gen.A, "Explicit A as JSON: n x n coefficient arrays");
  g->add_option("--b", gen.b, "Explicit b as JSON: n coefficient arrays");
  g->add_option("--out", gen.out, "Output file (default stdout)");
  g->callback([&] { action = [&] { return cmd_gen(gen, io); }; });

  std::string solve_path;
  auto* s = app.add_subcommand("solve", "Error-free reference solve of an instance file");
  s->add_option("--instance", solve_path)->required();
  s->callback([&] { action = [&] { return cmd_solve(solve_path, io); }; });

  DecodeFlags dec;
  auto* d = app.add_subcommand("decode", "Decode at a fixed evaluation count");
  d->add_option("--instance", dec.instance)->required();
  d->add_option("--evaluations", dec.evaluations, "Evaluation table file");
  add_error_flags(d, dec.errors);
  d->add_option("--N", dec.N);
  d->add_option("--D", dec.D);
  d->add_option("--tau", dec.tau);
  d->add_option("--bound", dec.bound)->check(CLI::IsMember({"kpsw", "glz"}));
  auto* nu = d->add_option("--nu", dec.nu);
  auto* theta = d->add_option("--theta", dec.theta);
  nu->needs(theta);
  theta->needs(nu);
  d->callback([&] { action = [&] { return cmd_decode(dec, io); }; });

  EarlyFlags et;
  auto* e = app.add_subcommand("earlyterm", "Run an early-termination driver");
  e->add_option("--instance", et.instance)->required();
  e->add_option("--mode", et.mode)->required()->check(CLI::IsMember({"alg1", "alg2", "alg3", "alg4"}));
  e->add_option("--tau", et.tau);
  e->add_option("--rho", et.rho, "Error rate as an exact fraction p/q");
  e->add_option("--strategy", et.strategy)->check(CLI::IsMember({"exhaustive", "two"}));
  e->add_option("--points", et.points)->check(CLI::IsMember({"sequential", "random"}));
  add_error_flags(e, et.errors);
  e->add_option("--N", et.N);
  e->add_option("--D", et.D);
  e->add_option("--max-L", et.max_L);
  e->callback([&] { action = [&] { return cmd_earlyterm(et, io); }; });

  BoundsFlags bf;
  auto* b = app.add_subcommand("bounds", "Evaluation counts and stopping predictions");
  b->add_option("--n", bf.n);
  b->add_option("--N", bf.N);
  b->add_option("--D", bf.D);
  b->add_option("--degA", bf.degA);
  b->add_option("--degb", bf.degb);
  b->add_option("--tau", bf.tau);
  b->add_option("--nu", bf.nu);
  b->add_option("--theta", bf.theta);
  b->add_option("--degv", bf.degv);
  b->add_option("--degd", bf.degd);
  b->add_option("--errors", bf.errors, "Actual error count for the stop predictions");
  b->add_option("--rho", bf.rho, "Error rate as an exact fraction p/q");
  b->callback([&] { action = [&] { return cmd_bounds(bf, io); }; });

  MonteFlags mf;
  auto* m = app.add_subcommand("montecarlo", "Run a Monte-Carlo experiment");
  m->add_option("--experiment", mf.experiment)->check(CLI::IsMember({"structure", "theorem2", "termination"}));
  m->add_option("--spec", mf.spec_file, "JSON spec file; flags override its keys");
  for (const auto& k : kSpecKeys) m->add_option("--" + k, mf.values[k]);
  m->add_option("--out", mf.out);
  m->add_option("--csv", mf.csv);
  m->add_flag("--wall-time", mf.wall_time, "Include wall time in the report");
  m->callback([&] { action = [&] { return cmd_montecarlo(mf, io); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? 0 : kUsage;
  }
  try {
    return action();
  } catch (const UsageError& ue) {
    err << "error: " << ue.what() << "\n";
    return kUsage;
  } catch (const Error& pe) {
    err << "error: " << pe.what() << "\n";
    return usage_error(pe.code()) ? kUsage : kDecodeFailure;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  }
}

}  // namespace plswe::cli
