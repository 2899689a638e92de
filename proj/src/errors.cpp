#include "plswe/errors.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

#include "plswe/error.hpp"
#include "plswe/matrix.hpp"

namespace plswe {

namespace {

std::mt19937_64 column_rng(std::uint64_t seed, std::size_t j, std::uint32_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(std::uint64_t{j} >> 32), salt};
  return std::mt19937_64(seq);
}

void check_support(const Support& support, std::size_t L) {
  if (!support.empty() && *support.rbegin() >= L) {
    throw Error(Errc::SupportOutOfRange, "error position " + std::to_string(*support.rbegin() + 1) +
                                             " beyond L = " + std::to_string(L));
  }
}

std::vector<Fq> nonzero_offset(const PrimeField& F, std::size_t n, std::uint64_t seed, std::size_t j) {
  auto rng = column_rng(seed, j, 2);
  std::uniform_int_distribution<std::uint64_t> coef(0, F.modulus() - 1);
  std::vector<Fq> c(n);
  for (;;) {
    bool zero = true;
    for (Fq& x : c) {
      x = Fq{coef(rng)};
      zero = zero && x.value == 0;
    }
    if (!zero) return c;
  }
}

Fq denominator_at(const GroundTruth& truth, Fq a) {
  const Fq da = truth.solution.d(a);
  if (da.value == 0) throw Error(Errc::DenominatorVanishes, "d(" + std::to_string(a.value) + ") = 0");
  return da;
}

std::vector<Fq> honest_column(const GroundTruth& truth, Fq a) {
  const PrimeField& F = truth.solution.d.field();
  const Fq dinv = F.inv(denominator_at(truth, a));
  std::vector<Fq> col = truth.solution.v(a);
  for (Fq& y : col) y = F.mul(y, dinv);
  return col;
}

std::vector<Fq> case1_column(const GroundTruth& truth, Fq a, std::size_t cell) {
  const PrimeField& F = truth.solution.d.field();
  const Fq dinv = F.inv(denominator_at(truth, a));
  std::vector<Fq> col = truth.solution.v(a);
  col[cell] = F.sub(col[cell], F.one());
  for (Fq& y : col) y = F.mul(y, dinv);
  return col;
}

std::vector<Fq> case2_column(const PLSInstance& inst, const GroundTruth& truth, Fq a, std::size_t cell) {
  const PrimeField& F = inst.field;
  const Fq da = denominator_at(truth, a);
  std::vector<Fq> rhs(inst.n, F.zero());
  rhs[cell] = da;
  auto w = solve_square(inst.A.evaluate(a), rhs);
  if (!w) throw Error(Errc::SingularEvaluation, "A(" + std::to_string(a.value) + ") is singular");
  const Fq dinv = F.inv(da);
  std::vector<Fq> col = truth.solution.v(a);
  for (std::size_t i = 0; i < col.size(); ++i) col[i] = F.mul(F.add(col[i], (*w)[i]), dinv);
  return col;
}

std::size_t rank_in(const Support& support, std::size_t j) {
  return static_cast<std::size_t>(std::distance(support.begin(), support.find(j)));
}

}  // namespace

Partition Partition::round_robin(const Support& support, std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "partition needs n >= 1");
  Partition p{std::vector<std::vector<std::size_t>>(n)};
  std::size_t k = 0;
  for (std::size_t j : support) p.cells[k++ % n].push_back(j);
  return p;
}

std::size_t Partition::cell_of(std::size_t j) const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (std::find(cells[i].begin(), cells[i].end(), j) != cells[i].end()) return i;
  throw Error(Errc::SupportOutOfRange, "column " + std::to_string(j + 1) + " is not in the support");
}

std::size_t Partition::max_cell() const {
  std::size_t m = 0;
  for (const auto& c : cells) m = std::max(m, c.size());
  return m;
}

std::vector<Fq> uniform_column(const PrimeField& F, std::size_t n, std::uint64_t seed, std::size_t j) {
  auto rng = column_rng(seed, j, 1);
  std::uniform_int_distribution<std::uint64_t> coef(0, F.modulus() - 1);
  std::vector<Fq> c(n);
  for (Fq& x : c) x = Fq{coef(rng)};
  return c;
}

EvaluationTable inject_uniform(const EvaluationTable& Y, const Support& support, std::uint64_t seed) {
  check_support(support, Y.size());
  EvaluationTable out = Y;
  for (std::size_t j : support) out.columns[j] = uniform_column(Y.field, Y.n, seed, j);
  return out;
}

EvaluationTable inject_structured_case1(const GroundTruth& truth, const std::vector<Fq>& points,
                                        const Partition& partition) {
  const PrimeField& F = truth.solution.d.field();
  const std::size_t n = truth.solution.v.size();
  EvaluationTable Y{F, n, points, {}};
  for (std::size_t i = 0; i < partition.cells.size(); ++i)
    for (std::size_t j : partition.cells[i])
      if (j >= points.size()) throw Error(Errc::SupportOutOfRange, "error position beyond the table");
  for (Fq a : points) Y.columns.push_back(honest_column(truth, a));
  for (std::size_t i = 0; i < partition.cells.size(); ++i)
    for (std::size_t j : partition.cells[i]) Y.columns[j] = case1_column(truth, points[j], i);
  return Y;
}

EvaluationTable inject_structured_case2(const PLSInstance& inst, const GroundTruth& truth,
                                        const std::vector<Fq>& points, const Partition& partition) {
  EvaluationTable Y{inst.field, inst.n, points, {}};
  for (std::size_t i = 0; i < partition.cells.size(); ++i)
    for (std::size_t j : partition.cells[i])
      if (j >= points.size()) throw Error(Errc::SupportOutOfRange, "error position beyond the table");
  for (Fq a : points) Y.columns.push_back(honest_column(truth, a));
  for (std::size_t i = 0; i < partition.cells.size(); ++i)
    for (std::size_t j : partition.cells[i]) Y.columns[j] = case2_column(inst, truth, points[j], i);
  return Y;
}

EvaluationStream::EvaluationStream(PLSInstance inst, GroundTruth truth, ErrorProcess process, PointMode mode,
                                   std::uint64_t point_seed)
    : inst_(std::move(inst)),
      truth_(std::move(truth)),
      process_(std::move(process)),
      points_(mode == PointMode::Random ? PointSequence::random(inst_, point_seed)
                                        : PointSequence::sequential(inst_)),
      table_{inst_.field, inst_.n, {}, {}} {
  if (const auto* r = std::get_if<RateBounded>(&process_)) check_rate(r->rho);
}

void EvaluationStream::extend(std::size_t L) {
  if (L <= table_.size()) return;
  const std::vector<Fq>& pts = points_.take(L);
  const PrimeField& F = inst_.field;
  const std::size_t n = inst_.n;
  for (std::size_t j = table_.size(); j < L; ++j) {
    const Fq a = pts[j];
    std::vector<Fq> col = honest_column(truth_, a);
    bool corrupt = false;
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, UniformOnSupport>) {
            if (p.support.contains(j)) {
              col = uniform_column(F, n, p.seed, j);
              corrupt = true;
            }
          } else if constexpr (std::is_same_v<P, FixedSchedule>) {
            if (p.support.contains(j)) {
              const std::vector<Fq> off = nonzero_offset(F, n, p.seed, j);
              for (std::size_t i = 0; i < n; ++i) col[i] = F.add(col[i], off[i]);
              corrupt = true;
            }
          } else if constexpr (std::is_same_v<P, StructuredCase1>) {
            if (p.support.contains(j)) {
              col = case1_column(truth_, a, rank_in(p.support, j) % n);
              corrupt = true;
            }
          } else if constexpr (std::is_same_v<P, StructuredCase2>) {
            if (p.support.contains(j)) {
              col = case2_column(inst_, truth_, a, rank_in(p.support, j) % n);
              corrupt = true;
            }
          } else if constexpr (std::is_same_v<P, RateBounded>) {
            auto rng = column_rng(p.seed, j, 3);
            const auto den = static_cast<std::uint64_t>(p.rho.denominator());
            const auto num = static_cast<std::uint64_t>(p.rho.numerator());
            const bool wants = std::uniform_int_distribution<std::uint64_t>(0, den - 1)(rng) < num;
            const auto cap = floor_nonneg(p.rho * Rational(static_cast<std::int64_t>(j + 1)));
            if (wants && static_cast<std::int64_t>(corrupted_.size()) + 1 <= cap) {
              col = uniform_column(F, n, p.seed, j);
              corrupt = true;
            }
          }
        },
        process_);
    table_.points.push_back(a);
    table_.columns.push_back(std::move(col));
    if (corrupt) corrupted_.push_back(j);
  }
}

EvaluationTable EvaluationStream::prefix(std::size_t L) {
  extend(L);
  return table_.prefix(L);
}

int EvaluationStream::error_count(std::size_t L) {
  extend(L);
  return static_cast<int>(std::lower_bound(corrupted_.begin(), corrupted_.end(), L) - corrupted_.begin());
}

std::vector<std::size_t> EvaluationStream::support(std::size_t L) {
  extend(L);
  return {corrupted_.begin(), corrupted_.begin() + error_count(L)};
}

}  // namespace plswe
