#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "plswe/error.hpp"
#include "plswe/instance.hpp"

using namespace plswe;

namespace {

const PrimeField F7(7);

PLSInstance tiny() {
  PolyMatrix A(1, 1, F7);
  A(0, 0) = Polynomial::from_ints(F7, {0, 1});
  return PLSInstance::from_parts(A, PolyVector({Polynomial::from_ints(F7, {1})}));
}

std::uint64_t det_at(const PLSInstance& inst, std::uint64_t a) {
  const std::uint64_t q = inst.field.modulus();
  std::vector<oracle::Vec> m(inst.n, oracle::Vec(inst.n));
  for (std::size_t r = 0; r < inst.n; ++r)
    for (std::size_t c = 0; c < inst.n; ++c) m[r][c] = oracle::eval(oracle::values(inst.A(r, c).coeffs()), a, q);
  return oracle::det(m, q);
}

}  // namespace

TEST(Instance, TinyReferenceSolution) {
  const auto t = reference_solve(tiny());
  EXPECT_EQ(t.solution.v, PolyVector({Polynomial::from_ints(F7, {1})}));
  EXPECT_EQ(t.solution.d, Polynomial::from_ints(F7, {0, 1}));
  EXPECT_EQ(t.degv, 0);
  EXPECT_EQ(t.degd, 1);
}

TEST(Instance, PolynomialSolution) {
  PolyMatrix A(1, 1, F7);
  A(0, 0) = Polynomial::from_ints(F7, {1});
  const auto inst = PLSInstance::from_parts(A, PolyVector({Polynomial::from_ints(F7, {1, 1})}));
  const auto t = reference_solve(inst);
  EXPECT_EQ(t.solution.v[0], Polynomial::from_ints(F7, {1, 1}));
  EXPECT_EQ(t.solution.d, Polynomial::from_ints(F7, {1}));
}

TEST(Instance, HonestEvaluationTiny) {
  const auto inst = tiny();
  const auto t = reference_solve(inst);
  const std::vector<Fq> pts{Fq{1}, Fq{2}, Fq{3}, Fq{4}};
  const auto Y = honest_evaluate(inst, t, pts);
  const std::vector<std::uint64_t> want{1, 4, 5, 2};
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(Y.columns[j][0].value, want[j]);
  EXPECT_EQ(honest_evaluate(inst, pts).columns, Y.columns);
  try {
    honest_evaluate(inst, t, {Fq{0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankDropPoint);
  }
  EXPECT_THROW(honest_evaluate(inst, std::vector<Fq>{Fq{0}}), Error);
}

TEST(Instance, GeneratedInstancesAreCertified) {
  const PrimeField F(10007);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto inst = generate_instance(F, 2, 2, 1, seed);
    // Nonsingular: det(A) is nonzero at some point (degree <= 4, so 5 probes decide).
    bool nonzero = false;
    for (std::uint64_t a = 0; a < 5; ++a) nonzero = nonzero || det_at(inst, a) != 0;
    EXPECT_TRUE(nonzero);
    EXPECT_LE(inst.A.degree(), 2);
    EXPECT_LE(inst.b.degree(), 1);
    const auto t = reference_solve(inst);
    EXPECT_TRUE(satisfies(inst, t.solution));
    EXPECT_TRUE(t.solution.d.is_monic());
    EXPECT_TRUE(content_gcd(t.solution.v, t.solution.d).degree() == 0);
    EXPECT_LE(t.degd, 4);
    const DegreeContext ctx = cramer_context(inst);
    EXPECT_LT(t.degv, ctx.N);
    EXPECT_LT(t.degd, ctx.D);
    // Pointwise re-check d(a) y = v(a) against the node computation.
    PointSequence seq = PointSequence::sequential(inst);
    const auto pts = seq.take(10);
    const auto Y = honest_evaluate(inst, pts);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const Fq da = t.solution.d(pts[j]);
      EXPECT_NE(da.value, 0u);
      const auto va = t.solution.v(pts[j]);
      for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(F.mul(da, Y.columns[j][i]), va[i]);
    }
  }
}

TEST(Instance, DeterministicPerSeed) {
  const PrimeField F(10007);
  EXPECT_EQ(generate_instance(F, 3, 2, 2, 77).A, generate_instance(F, 3, 2, 2, 77).A);
  EXPECT_NE(generate_instance(F, 3, 2, 2, 77).A, generate_instance(F, 3, 2, 2, 78).A);
}

TEST(Instance, FieldTooSmall) {
  try {
    generate_instance(PrimeField(3), 5, 1, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FieldTooSmall);
  }
}

TEST(Instance, RejectsSingularOrMisshapen) {
  PolyMatrix A(2, 2, F7);
  A(0, 0) = Polynomial::from_ints(F7, {0, 1});
  A(0, 1) = Polynomial::from_ints(F7, {0, 1});
  A(1, 0) = Polynomial::from_ints(F7, {1});
  A(1, 1) = Polynomial::from_ints(F7, {1});
  const PolyVector b({Polynomial::from_ints(F7, {1}), Polynomial::from_ints(F7, {1})});
  try {
    PLSInstance::from_parts(A, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateSystem);
  }
  EXPECT_THROW(PLSInstance::from_parts(A, PolyVector({Polynomial::from_ints(F7, {1})})), Error);
}

TEST(PointSequence, PrefixConsistentDistinctAndUsable) {
  const PrimeField F(101);
  const auto inst = generate_instance(F, 2, 1, 1, 3);
  for (bool random : {false, true}) {
    PointSequence a = random ? PointSequence::random(inst, 9) : PointSequence::sequential(inst);
    PointSequence b = a;
    const auto first = a.take(10);
    const auto longer = b.take(40);
    EXPECT_TRUE(std::equal(first.begin(), first.end(), longer.begin()));
    std::set<std::uint64_t> seen;
    for (Fq x : longer) {
      EXPECT_TRUE(seen.insert(x.value).second);
      EXPECT_NE(det_at(inst, x.value), 0u);
    }
  }
  PointSequence s = PointSequence::sequential(inst);
  EXPECT_THROW(s.take(200), Error);
}
