#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <variant>
#include <vector>

#include "plswe/bounds.hpp"
#include "plswe/instance.hpp"
#include "plswe/keyeq.hpp"

namespace plswe {

/// Column indices are 0-based throughout the library.
using Support = std::set<std::size_t>;

/// Cells I_1, ..., I_n of the error support; sorted support indices are
/// dealt round-robin, so every cell has at most ceil(|E| / n) elements.
struct Partition {
  std::vector<std::vector<std::size_t>> cells;

  static Partition round_robin(const Support& support, std::size_t n);
  /// Index i of the cell containing column j. Throws SupportOutOfRange.
  std::size_t cell_of(std::size_t j) const;
  std::size_t max_cell() const;
};

/// Uniform column of F_q^n determined by (seed, j) alone, so corrupting a
/// column never depends on which other columns were drawn.
std::vector<Fq> uniform_column(const PrimeField& F, std::size_t n, std::uint64_t seed, std::size_t j);

/// Replaces the columns in `support` by uniform columns. A replacement may
/// coincide with the honest value; |E| counts the support regardless.
/// Throws SupportOutOfRange.
EvaluationTable inject_uniform(const EvaluationTable& Y, const Support& support, std::uint64_t seed);

// Adversarial draws. Column j of cell i gets
//   case 1: (v(a_j) - e_i) / d(a_j)
//   case 2: (v(a_j) + A(a_j)^{-1} d(a_j) e_i) / d(a_j)
// with e_i the i-th unit vector; the other columns are honest.
EvaluationTable inject_structured_case1(const GroundTruth& truth, const std::vector<Fq>& points,
                                        const Partition& partition);
EvaluationTable inject_structured_case2(const PLSInstance& inst, const GroundTruth& truth,
                                        const std::vector<Fq>& points, const Partition& partition);

struct NoErrors {};
struct UniformOnSupport {
  Support support;
  std::uint64_t seed = 0;
};
/// Like UniformOnSupport, but the replacement is the honest value plus a
/// nonzero offset, so every listed column really is wrong.
struct FixedSchedule {
  Support support;
  std::uint64_t seed = 0;
};
struct StructuredCase1 {
  Support support;
};
struct StructuredCase2 {
  Support support;
};
/// Each new column is corrupted (uniformly) with probability rho unless that
/// would break |E(L)| <= floor(rho L), in which case it stays honest.
struct RateBounded {
  Rational rho{0};
  std::uint64_t seed = 0;
};
using ErrorProcess = std::variant<NoErrors, UniformOnSupport, FixedSchedule, StructuredCase1, StructuredCase2, RateBounded>;

enum class PointMode { Sequential, Random };

/// Prefix-consistent source of evaluations y_1, y_2, ... for the
/// early-termination drivers. Columns are produced on demand and never
/// change once produced; copies replay identically.
class EvaluationStream {
 public:
  EvaluationStream(PLSInstance inst, GroundTruth truth, ErrorProcess process,
                   PointMode mode = PointMode::Sequential, std::uint64_t point_seed = 0);

  /// The first L evaluations.
  EvaluationTable prefix(std::size_t L);
  /// |E(L)|: corrupted positions among the first L.
  int error_count(std::size_t L);
  /// Corrupted positions among the first L, ascending.
  std::vector<std::size_t> support(std::size_t L);
  std::size_t produced() const noexcept { return table_.size(); }

  const PLSInstance& instance() const noexcept { return inst_; }
  const GroundTruth& truth() const noexcept { return truth_; }
  const ErrorProcess& process() const noexcept { return process_; }

 private:
  void extend(std::size_t L);

  PLSInstance inst_;
  GroundTruth truth_;
  ErrorProcess process_;
  PointSequence points_;
  EvaluationTable table_;
  std::vector<std::size_t> corrupted_;
};

}  // namespace plswe
