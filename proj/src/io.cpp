#include "plswe/io.hpp"

#include <fstream>
#include <sstream>

#include "plswe/error.hpp"

namespace plswe {

namespace {

Fq element_from_json(const PrimeField& F, const Json& j) {
  if (!j.is_number_integer()) throw Error(Errc::InvalidArgument, "coefficient must be an integer");
  return F.element(j.get<std::int64_t>());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::InvalidArgument, std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw Error(Errc::InvalidArgument, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::uint64_t modulus_field(const Json& j) {
  const Json& q = field(j, "q");
  if (!q.is_number_integer() || q.get<std::int64_t>() < 1) {
    throw Error(Errc::InvalidArgument, "field 'q' must be a positive integer");
  }
  return q.get<std::uint64_t>();
}

}  // namespace

Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (Fq c : p.coeffs()) a.push_back(c.value);
  return a;
}

Json to_json(const PolyVector& v) {
  Json a = Json::array();
  for (const Polynomial& p : v) a.push_back(to_json(p));
  return a;
}

Json to_json(const RationalSolution& s) {
  Json j;
  j["v"] = to_json(s.v);
  j["d"] = to_json(s.d);
  return j;
}

Polynomial poly_from_json(const PrimeField& F, const Json& j) {
  if (!j.is_array()) throw Error(Errc::InvalidArgument, "polynomial must be a coefficient array");
  std::vector<Fq> c;
  for (const Json& x : j) c.push_back(element_from_json(F, x));
  return Polynomial(F, std::move(c));
}

PolyVector polyvec_from_json(const PrimeField& F, const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::InvalidArgument, "vector must be a nonempty array of polynomials");
  std::vector<Polynomial> e;
  for (const Json& x : j) e.push_back(poly_from_json(F, x));
  return PolyVector(std::move(e));
}

Json instance_to_json(const PLSInstance& inst, const GroundTruth* truth) {
  Json j;
  j["q"] = inst.field.modulus();
  j["n"] = inst.n;
  j["degA"] = inst.degA;
  j["degb"] = inst.degb;
  Json A = Json::array();
  for (std::size_t r = 0; r < inst.n; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < inst.n; ++c) row.push_back(to_json(inst.A(r, c)));
    A.push_back(row);
  }
  j["A"] = A;
  j["b"] = to_json(inst.b);
  if (truth != nullptr) j["truth"] = to_json(truth->solution);
  return j;
}

InstanceFile instance_from_json(const Json& j) {
  const PrimeField F(modulus_field(j));
  const int n = int_field(j, "n");
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  const Json& Aj = field(j, "A");
  if (!Aj.is_array() || Aj.size() != un) throw Error(Errc::InvalidArgument, "A must have n rows");
  PolyMatrix A(un, un, F);
  for (std::size_t r = 0; r < un; ++r) {
    if (!Aj[r].is_array() || Aj[r].size() != un) throw Error(Errc::InvalidArgument, "A must have n columns");
    for (std::size_t c = 0; c < un; ++c) A(r, c) = poly_from_json(F, Aj[r][c]);
  }
  PolyVector b = polyvec_from_json(F, field(j, "b"));
  const int degA = j.contains("degA") ? int_field(j, "degA") : std::max(A.degree(), 0);
  const int degb = j.contains("degb") ? int_field(j, "degb") : std::max(b.degree(), 0);
  InstanceFile out{PLSInstance::from_parts(std::move(A), std::move(b), degA, degb), std::nullopt};
  if (j.contains("truth")) {
    const Json& t = j.at("truth");
    RationalSolution sol{polyvec_from_json(F, field(t, "v")), poly_from_json(F, field(t, "d"))};
    if (sol.v.size() != un || !satisfies(out.instance, sol)) {
      throw Error(Errc::InvalidArgument, "stored ground truth does not satisfy A v = d b");
    }
    const int degv = sol.v.degree();
    const int degd = sol.d.degree();
    out.truth = GroundTruth{std::move(sol), degv, degd};
  }
  return out;
}

Json table_to_json(const EvaluationTable& Y) {
  Json j;
  j["q"] = Y.field.modulus();
  j["n"] = Y.n;
  Json pts = Json::array();
  for (Fq a : Y.points) pts.push_back(a.value);
  j["points"] = pts;
  Json cols = Json::array();
  for (const auto& c : Y.columns) {
    Json col = Json::array();
    for (Fq y : c) col.push_back(y.value);
    cols.push_back(col);
  }
  j["columns"] = cols;
  return j;
}

EvaluationTable table_from_json(const Json& j) {
  const PrimeField F(modulus_field(j));
  EvaluationTable Y{F, static_cast<std::size_t>(int_field(j, "n")), {}, {}};
  for (const Json& a : field(j, "points")) Y.points.push_back(element_from_json(F, a));
  for (const Json& c : field(j, "columns")) {
    std::vector<Fq> col;
    for (const Json& y : c) col.push_back(element_from_json(F, y));
    Y.columns.push_back(std::move(col));
  }
  Y.validate();
  return Y;
}

Json report_to_json(const TerminationReport& r) {
  Json j;
  if (r.solved()) {
    j["outcome"] = "solved";
    j["solution"] = to_json(r.solution());
  } else {
    const Failure& f = std::get<Failure>(r.outcome);
    j["outcome"] = "failure";
    j["error"] = to_string(f.code);
    j["message"] = f.message;
  }
  j["L_stop"] = r.L_stop;
  if (r.predicted_L_stop) {
    j["predicted_L_stop"] = *r.predicted_L_stop;
  } else {
    j["predicted_L_stop"] = nullptr;
  }
  Json att = Json::array();
  for (const Attempt& a : r.attempts) att.push_back({a.L, a.nu, a.theta, a.check});
  j["attempts"] = att;
  return j;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace plswe
