#include "plswe/system.hpp"

#include <algorithm>
#include <utility>

#include "plswe/error.hpp"
#include "plswe/matrix.hpp"

namespace plswe {

PLSInstance PLSInstance::from_parts(PolyMatrix A, PolyVector b) {
  const int degA = std::max(A.degree(), 0);
  const int degb = std::max(b.degree(), 0);
  return from_parts(std::move(A), std::move(b), degA, degb);
}

PLSInstance PLSInstance::from_parts(PolyMatrix A, PolyVector b, int degA, int degb) {
  if (A.rows() != A.cols() || A.rows() == 0) throw Error(Errc::InvalidArgument, "A must be square and nonempty");
  if (b.size() != A.rows()) throw Error(Errc::InvalidArgument, "b must have n entries");
  if (A.degree() > degA || b.degree() > degb) {
    throw Error(Errc::InvalidArgument, "declared degrees are below the actual degrees of A, b");
  }
  if (!is_nonsingular(A)) throw Error(Errc::DegenerateSystem, "det(A) is the zero polynomial");
  const PrimeField field = A.field();
  const std::size_t n = A.rows();
  return PLSInstance{field, n, degA, degb, std::move(A), std::move(b)};
}

bool is_nonsingular(const PolyMatrix& A) {
  const PrimeField& F = A.field();
  const std::uint64_t need = static_cast<std::uint64_t>(A.rows()) * static_cast<std::uint64_t>(std::max(A.degree(), 0)) + 1;
  const std::uint64_t probes = std::min<std::uint64_t>(need, F.modulus());
  for (std::uint64_t a = 0; a < probes; ++a) {
    if (determinant(A.evaluate(Fq{a})).value != 0) return true;
  }
  return false;
}

bool satisfies(const PLSInstance& inst, const RationalSolution& sol) {
  if (sol.v.size() != inst.n || sol.d.is_zero()) return false;
  PolyVector lhs = inst.A * sol.v;
  PolyVector rhs = inst.b.scaled(sol.d);
  return lhs == rhs;
}

std::vector<Fq> node_solve(const PLSInstance& inst, Fq alpha) {
  ScalarMatrix a = inst.A.evaluate(alpha);
  std::vector<Fq> rhs = inst.b(alpha);
  auto y = solve_square(a, rhs);
  if (!y) throw Error(Errc::RankDropPoint, "A(" + std::to_string(alpha.value) + ") is singular");
  return std::move(*y);
}

}  // namespace plswe
