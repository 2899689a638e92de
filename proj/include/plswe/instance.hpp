#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "plswe/bounds.hpp"
#include "plswe/keyeq.hpp"
#include "plswe/system.hpp"

namespace plswe {

struct GroundTruth {
  RationalSolution solution;
  int degv = 0;
  int degd = 0;
};

/// Degree bounds from Cramer's rule: N = (n-1) degA + degb + 1,
/// D = n degA + 1.
DegreeContext cramer_context(std::size_t n, int degA, int degb);
DegreeContext cramer_context(const PLSInstance& inst);

/// Random instance with deg(A) <= degA, deg(b) <= degb, det(A) != 0 and
/// b != 0, fully determined by the seed. Throws FieldTooSmall unless
/// q >= 4 * eval_count_base(N, D) for the Cramer bounds.
PLSInstance generate_instance(const PrimeField& field, std::size_t n, int degA, int degb, std::uint64_t seed);

/// Error-free self-decoding at the Cramer bounds with L = eval_count_base(N, D)
/// points, certified by A v = d b. Throws DegenerateSystem if certification
/// keeps failing on fresh points.
GroundTruth reference_solve(const PLSInstance& inst);

/// Honest table computed by the simulated nodes: column j solves
/// A(alpha_j) y = b(alpha_j). Throws RankDropPoint.
EvaluationTable honest_evaluate(const PLSInstance& inst, const std::vector<Fq>& points);

/// Same table computed from the known solution as v(alpha_j) / d(alpha_j).
/// Throws RankDropPoint when det(A)(alpha_j) = 0.
EvaluationTable honest_evaluate(const PLSInstance& inst, const GroundTruth& truth, const std::vector<Fq>& points);

/// Extensible sequence of distinct evaluation points avoiding rank drops.
/// Sequential mode yields 1, 2, 3, ...; random mode draws uniformly from
/// F_q with a seeded generator. Both are prefix-consistent.
class PointSequence {
 public:
  static PointSequence sequential(const PLSInstance& inst, std::uint64_t start = 1);
  static PointSequence random(const PLSInstance& inst, std::uint64_t seed);

  /// First L points; throws FieldTooSmall when F_q runs out.
  const std::vector<Fq>& take(std::size_t L);

 private:
  PointSequence(const PLSInstance& inst, std::optional<std::uint64_t> seed, std::uint64_t start);
  bool usable(Fq a) const;

  PolyMatrix A_;
  std::optional<std::mt19937_64> rng_;
  std::uint64_t next_;
  std::set<std::uint64_t> seen_;
  std::vector<Fq> points_;
};

}  // namespace plswe
