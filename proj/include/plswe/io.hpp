#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "plswe/earlyterm.hpp"
#include "plswe/instance.hpp"
#include "plswe/keyeq.hpp"

namespace plswe {

using Json = nlohmann::ordered_json;

// Polynomials are coefficient arrays, lowest degree first; the zero
// polynomial is [].
Json to_json(const Polynomial& p);
Json to_json(const PolyVector& v);
Json to_json(const RationalSolution& s);
Polynomial poly_from_json(const PrimeField& F, const Json& j);
PolyVector polyvec_from_json(const PrimeField& F, const Json& j);

struct InstanceFile {
  PLSInstance instance;
  std::optional<GroundTruth> truth;
};

/// {"q", "n", "degA", "degb", "A": n x n coefficient arrays, "b", and
/// optionally "truth": {"v", "d"}}.
Json instance_to_json(const PLSInstance& inst, const GroundTruth* truth = nullptr);
/// Throws InvalidArgument on malformed documents; a stored truth must
/// satisfy A v = d b.
InstanceFile instance_from_json(const Json& j);

/// {"q", "n", "points": [...], "columns": [[y_1..y_n], ...]}.
Json table_to_json(const EvaluationTable& Y);
EvaluationTable table_from_json(const Json& j);

Json report_to_json(const TerminationReport& r);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace plswe
