#include "plswe/instance.hpp"

#include <string>
#include <utility>

#include "plswe/error.hpp"
#include "plswe/matrix.hpp"

namespace plswe {

DegreeContext cramer_context(std::size_t n, int degA, int degb) {
  const int nn = static_cast<int>(n);
  DegreeContext ctx{nn, (nn - 1) * degA + degb + 1, nn * degA + 1, degA, degb};
  ctx.validate();
  return ctx;
}

DegreeContext cramer_context(const PLSInstance& inst) { return cramer_context(inst.n, inst.degA, inst.degb); }

namespace {

Polynomial random_poly(const PrimeField& F, int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> coef(0, F.modulus() - 1);
  std::vector<Fq> c(static_cast<std::size_t>(deg) + 1);
  for (Fq& x : c) x = Fq{coef(rng)};
  return Polynomial(F, std::move(c));
}

}  // namespace

PLSInstance generate_instance(const PrimeField& field, std::size_t n, int degA, int degb, std::uint64_t seed) {
  if (n == 0 || degA < 0 || degb < 0) throw Error(Errc::InvalidArgument, "n >= 1 and degrees >= 0 required");
  const DegreeContext ctx = cramer_context(n, degA, degb);
  const auto needed = 4 * static_cast<std::uint64_t>(eval_count_base(ctx, ctx.N, ctx.D));
  if (field.modulus() < needed) {
    throw Error(Errc::FieldTooSmall, "q = " + std::to_string(field.modulus()) + " but at least " +
                                         std::to_string(needed) + " is required");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PolyMatrix A(n, n, field);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) A(r, c) = random_poly(field, degA, rng);
    PolyVector b(n, field);
    for (std::size_t r = 0; r < n; ++r) b[r] = random_poly(field, degb, rng);
    if (b.is_zero() || !is_nonsingular(A)) continue;
    return PLSInstance{field, n, degA, degb, std::move(A), std::move(b)};
  }
  throw Error(Errc::DegenerateSystem, "could not sample a nonsingular system");
}

EvaluationTable honest_evaluate(const PLSInstance& inst, const std::vector<Fq>& points) {
  EvaluationTable Y{inst.field, inst.n, points, {}};
  Y.columns.reserve(points.size());
  for (Fq a : points) Y.columns.push_back(node_solve(inst, a));
  return Y;
}

EvaluationTable honest_evaluate(const PLSInstance& inst, const GroundTruth& truth, const std::vector<Fq>& points) {
  const PrimeField& F = inst.field;
  EvaluationTable Y{F, inst.n, points, {}};
  Y.columns.reserve(points.size());
  for (Fq a : points) {
    if (determinant(inst.A.evaluate(a)).value == 0) {
      throw Error(Errc::RankDropPoint, "A(" + std::to_string(a.value) + ") is singular");
    }
    // d divides det(A), so d(a) != 0 here.
    const Fq dinv = F.inv(truth.solution.d(a));
    std::vector<Fq> col = truth.solution.v(a);
    for (Fq& y : col) y = F.mul(y, dinv);
    Y.columns.push_back(std::move(col));
  }
  return Y;
}

GroundTruth reference_solve(const PLSInstance& inst) {
  const DegreeContext ctx = cramer_context(inst);
  const auto L = static_cast<std::size_t>(eval_count_base(ctx, ctx.N, ctx.D));
  const KeyEqParams params{ctx.N, ctx.D};
  PointSequence seq = PointSequence::sequential(inst);
  for (int round = 1; round <= 2; ++round) {
    std::vector<Fq> all = seq.take(L * static_cast<std::size_t>(round));
    std::vector<Fq> points(all.end() - static_cast<std::ptrdiff_t>(L), all.end());
    try {
      RationalSolution sol = find_solution(honest_evaluate(inst, points), params, &inst);
      GroundTruth truth{std::move(sol), 0, 0};
      truth.degv = truth.solution.v.degree();
      truth.degd = truth.solution.d.degree();
      return truth;
    } catch (const Error& e) {
      if (e.code() == Errc::FieldTooSmall) throw;
    }
  }
  throw Error(Errc::DegenerateSystem, "reference solution failed certification on fresh points");
}

PointSequence::PointSequence(const PLSInstance& inst, std::optional<std::uint64_t> seed, std::uint64_t start)
    : A_(inst.A), next_(start) {
  if (seed) rng_.emplace(*seed);
}

PointSequence PointSequence::sequential(const PLSInstance& inst, std::uint64_t start) {
  return PointSequence(inst, std::nullopt, start);
}

PointSequence PointSequence::random(const PLSInstance& inst, std::uint64_t seed) {
  return PointSequence(inst, seed, 0);
}

bool PointSequence::usable(Fq a) const { return determinant(A_.evaluate(a)).value != 0; }

const std::vector<Fq>& PointSequence::take(std::size_t L) {
  const std::uint64_t q = A_.field().modulus();
  while (points_.size() < L) {
    if (seen_.size() >= q) throw Error(Errc::FieldTooSmall, "ran out of evaluation points in F_q");
    Fq a;
    if (rng_) {
      std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
      a = Fq{pick(*rng_)};
      if (!seen_.insert(a.value).second) continue;
    } else {
      if (next_ >= q) throw Error(Errc::FieldTooSmall, "ran out of evaluation points in F_q");
      a = Fq{next_++};
      seen_.insert(a.value);
    }
    if (usable(a)) points_.push_back(a);
  }
  return points_;
}

}  // namespace plswe
