#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "plswe/bounds.hpp"
#include "plswe/earlyterm.hpp"
#include "plswe/error.hpp"
#include "plswe/errors.hpp"
#include "plswe/harness.hpp"
#include "plswe/instance.hpp"
#include "plswe/io.hpp"
#include "plswe/keyeq.hpp"

namespace py = pybind11;
using namespace plswe;

namespace {

// Documents cross the boundary as JSON text; the Python package turns them
// into dicts.
Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, e.what());
  }
}

std::string gen(std::uint64_t q, int n, int degA, int degb, std::uint64_t seed) {
  const PLSInstance inst = generate_instance(PrimeField(q), static_cast<std::size_t>(n), degA, degb, seed);
  const GroundTruth t = reference_solve(inst);
  return instance_to_json(inst, &t).dump();
}

std::string solve(const std::string& instance) {
  const GroundTruth t = reference_solve(instance_from_json(parse(instance)).instance);
  return to_json(t.solution).dump();
}

std::string evaluate(const std::string& instance, const std::vector<std::uint64_t>& points,
                     const std::vector<std::size_t>& errors, std::uint64_t seed) {
  const PLSInstance inst = instance_from_json(parse(instance)).instance;
  std::vector<Fq> pts;
  for (auto a : points) pts.push_back(inst.field.element(static_cast<std::int64_t>(a % inst.field.modulus())));
  const EvaluationTable Y = honest_evaluate(inst, pts);
  return table_to_json(inject_uniform(Y, Support(errors.begin(), errors.end()), seed)).dump();
}

std::string decode(const std::string& table, int nu, int theta) {
  return to_json(find_solution(table_from_json(parse(table)), KeyEqParams{nu, theta})).dump();
}

std::string early_terminate(const std::string& instance, const std::string& mode, std::optional<int> tau,
                            std::optional<std::string> rho, const std::string& strategy,
                            const std::vector<std::size_t>& errors, std::uint64_t seed) {
  const InstanceFile file = instance_from_json(parse(instance));
  const GroundTruth truth = file.truth ? *file.truth : reference_solve(file.instance);
  TerminationConfig cfg;
  cfg.mode = parse_algorithm(mode);
  cfg.ctx = cramer_context(file.instance);
  cfg.strategy = parse_strategy(strategy);
  if (cfg.mode == Algorithm::Alg1 || cfg.mode == Algorithm::Alg2) {
    if (!tau) throw Error(Errc::InvalidArgument, mode + " needs tau");
    cfg.budget = FixedBudget{*tau};
  } else {
    if (!rho) throw Error(Errc::InvalidArgument, mode + " needs rho");
    cfg.budget = LinearRateBudget{parse_rational(*rho)};
  }
  const Support sup(errors.begin(), errors.end());
  ErrorProcess process = sup.empty() ? ErrorProcess{NoErrors{}} : ErrorProcess{FixedSchedule{sup, seed}};
  EvaluationStream stream(file.instance, truth, process);
  const TerminationReport r = run_early_termination(cfg, stream);
  Json j = report_to_json(r);
  if (r.solved()) j["matches_truth"] = r.solution() == truth.solution;
  return j.dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polynomial linear system solving with errors";
  py::register_exception<Error>(m, "PlsweError", PyExc_ValueError);

  py::class_<DegreeContext>(m, "DegreeContext")
      .def(py::init([](int n, int N, int D, int degA, int degb) {
             DegreeContext c{n, N, D, degA, degb};
             c.validate();
             return c;
           }),
           py::arg("n"), py::arg("N"), py::arg("D"), py::arg("degA"), py::arg("degb"))
      .def_static("cramer", [](int n, int degA, int degb) { return cramer_context(static_cast<std::size_t>(n), degA, degb); },
                  py::arg("n"), py::arg("degA"), py::arg("degb"))
      .def_readonly("n", &DegreeContext::n)
      .def_readonly("N", &DegreeContext::N)
      .def_readonly("D", &DegreeContext::D)
      .def_readonly("degA", &DegreeContext::degA)
      .def_readonly("degb", &DegreeContext::degb)
      .def("__repr__", [](const DegreeContext& c) {
        return "DegreeContext(n=" + std::to_string(c.n) + ", N=" + std::to_string(c.N) + ", D=" + std::to_string(c.D) +
               ", degA=" + std::to_string(c.degA) + ", degb=" + std::to_string(c.degb) + ")";
      });

  m.def("eval_count", &eval_count_base, py::arg("ctx"), py::arg("nu"), py::arg("theta"));
  m.def("l_kpsw", &l_kpsw, py::arg("ctx"), py::arg("tau"));
  m.def("l_glz", &l_glz, py::arg("ctx"), py::arg("tau"));
  m.def("delta", &delta, py::arg("nu"), py::arg("theta"), py::arg("degv"), py::arg("degd"), py::arg("errors"));
  m.def(
      "linear_counts",
      [](const DegreeContext& ctx, const std::string& rho, int nu, int theta, int divisor) {
        const LinearCounts c = linear_counts(ctx, parse_rational(rho), nu, theta, divisor);
        return py::make_tuple(c.L, c.tau);
      },
      py::arg("ctx"), py::arg("rho"), py::arg("nu"), py::arg("theta"), py::arg("divisor") = 1);
  m.def(
      "stop_ceiling",
      [](const DegreeContext& ctx, const std::string& rho, int degv, int degd, int divisor) {
        return stop_upper_bound_linear(ctx, parse_rational(rho), degv, degd, divisor);
      },
      py::arg("ctx"), py::arg("rho"), py::arg("degv"), py::arg("degd"), py::arg("divisor") = 1);

  m.def("_generate", &gen, py::arg("q"), py::arg("n"), py::arg("degA"), py::arg("degb"), py::arg("seed"));
  m.def("_solve", &solve);
  m.def("_evaluate", &evaluate, py::arg("instance"), py::arg("points"), py::arg("errors"), py::arg("seed"));
  m.def("_decode", &decode, py::arg("table"), py::arg("nu"), py::arg("theta"));
  m.def("_early_terminate", &early_terminate, py::arg("instance"), py::arg("mode"), py::arg("tau"), py::arg("rho"),
        py::arg("strategy"), py::arg("errors"), py::arg("seed"));
  m.def("_cli", &run_cli, py::arg("args"));
}
