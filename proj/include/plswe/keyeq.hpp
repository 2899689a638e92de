#pragma once

#include <cstddef>
#include <vector>

#include "plswe/field.hpp"
#include "plswe/matrix.hpp"
#include "plswe/polynomial.hpp"
#include "plswe/system.hpp"

namespace plswe {

/// The received matrix Y: column j holds the n values reported for the
/// evaluation point points[j].
struct EvaluationTable {
  PrimeField field;
  std::size_t n;
  std::vector<Fq> points;
  std::vector<std::vector<Fq>> columns;

  std::size_t size() const noexcept { return points.size(); }
  EvaluationTable prefix(std::size_t L) const;
  /// Throws InvalidArgument on repeated points or misshapen columns.
  void validate() const;
};

/// Strict degree bounds for a key-equation attempt: deg(phi_i) < nu,
/// deg(psi) < theta.
struct KeyEqParams {
  int nu = 1;
  int theta = 1;

  void validate() const;
  friend bool operator==(const KeyEqParams&, const KeyEqParams&) = default;
};

struct KeyEqElement {
  PolyVector phi;
  Polynomial psi;
};

struct SolutionSpace {
  KeyEqParams params;
  std::vector<KeyEqElement> basis;

  std::size_t dimension() const noexcept { return basis.size(); }
};

// Coefficient matrix of phi_i(alpha_j) - y_{i,j} psi(alpha_j) = 0.
// Shape (n L) x (n nu + theta); row i*L + j belongs to (i, j); columns hold
// the coefficients of phi_1, ..., phi_n, then psi, each lowest degree first.
ScalarMatrix build_key_matrix(const EvaluationTable& Y, const KeyEqParams& p);

/// Kernel of build_key_matrix decoded into (phi, psi) pairs.
SolutionSpace solve_key_equations(const EvaluationTable& Y, const KeyEqParams& p);

/// True iff the solution space is nontrivial.
bool check(const EvaluationTable& Y, const KeyEqParams& p);

/// Reduces the first basis element by its content gcd and makes the
/// denominator monic. Throws EmptySolutionSpace, ZeroDenominator,
/// RankAboveOne (another basis element is not a polynomial multiple of the
/// reduced candidate) or, with a certifier, CertificationFailed.
RationalSolution find_solution(const SolutionSpace& S, const PLSInstance* certifier = nullptr);
RationalSolution find_solution(const EvaluationTable& Y, const KeyEqParams& p,
                               const PLSInstance* certifier = nullptr);

/// prod_{j in support} (x - points[j]).
Polynomial error_locator(const PrimeField& field, const std::vector<Fq>& points,
                         const std::vector<std::size_t>& support);

/// True iff S = <x^i Lambda v, x^i Lambda d>_{0 <= i < delta}: the
/// dimension is max(delta, 0), every basis element is P (Lambda v, Lambda d)
/// with deg P < delta, and every x^i (Lambda v, Lambda d) lies in span(S).
bool verify_space_structure(const SolutionSpace& S, const RationalSolution& truth, const Polynomial& lambda,
                            int delta);

/// Flattens (phi, psi) into the column layout of build_key_matrix.
/// Throws InvalidArgument when a degree exceeds the parameters.
std::vector<Fq> pack_element(const KeyEqElement& e, const KeyEqParams& p);

}  // namespace plswe
