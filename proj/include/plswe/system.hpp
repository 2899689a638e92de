#pragma once

#include <cstddef>
#include <vector>

#include "plswe/field.hpp"
#include "plswe/polynomial.hpp"

namespace plswe {

/// Nonsingular polynomial linear system A(x) y(x) = b(x) over F_q.
struct PLSInstance {
  PrimeField field;
  std::size_t n;
  int degA;  // declared bound on deg(A)
  int degb;  // declared bound on deg(b)
  PolyMatrix A;
  PolyVector b;

  /// Builds an instance from explicit A, b; declared degrees default to the
  /// actual ones. Throws InvalidArgument on shape mismatch and
  /// DegenerateSystem when det(A) is the zero polynomial.
  static PLSInstance from_parts(PolyMatrix A, PolyVector b);
  static PLSInstance from_parts(PolyMatrix A, PolyVector b, int degA, int degb);
};

/// y = v / d with d monic and gcd(gcd_i v_i, d) = 1.
struct RationalSolution {
  PolyVector v;
  Polynomial d;

  friend bool operator==(const RationalSolution&, const RationalSolution&) = default;
};

/// True when det(A) is not the zero polynomial, decided by evaluating det(A)
/// at n * deg(A) + 1 distinct points. When q is smaller than that, a
/// determinant vanishing on all of F_q counts as singular: such a system has
/// no usable evaluation point anyway.
bool is_nonsingular(const PolyMatrix& A);

/// Checks A v = d b as a polynomial identity.
bool satisfies(const PLSInstance& inst, const RationalSolution& sol);

/// One worker-node computation: y = A(alpha)^{-1} b(alpha). Throws
/// RankDropPoint when A(alpha) is singular.
std::vector<Fq> node_solve(const PLSInstance& inst, Fq alpha);

}  // namespace plswe
