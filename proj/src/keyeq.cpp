#include "plswe/keyeq.hpp"

#include <set>
#include <utility>

#include "plswe/error.hpp"

namespace plswe {

EvaluationTable EvaluationTable::prefix(std::size_t L) const {
  if (L > size()) throw Error(Errc::InvalidArgument, "prefix longer than the table");
  EvaluationTable t{field, n, {points.begin(), points.begin() + static_cast<std::ptrdiff_t>(L)},
                    {columns.begin(), columns.begin() + static_cast<std::ptrdiff_t>(L)}};
  return t;
}

void EvaluationTable::validate() const {
  if (columns.size() != points.size()) throw Error(Errc::InvalidArgument, "one column per evaluation point");
  std::set<std::uint64_t> seen;
  for (Fq a : points) {
    if (a.value >= field.modulus()) throw Error(Errc::InvalidArgument, "point outside F_q");
    if (!seen.insert(a.value).second) throw Error(Errc::InvalidArgument, "evaluation points must be distinct");
  }
  for (const auto& c : columns) {
    if (c.size() != n) throw Error(Errc::InvalidArgument, "every column must have n entries");
    for (Fq y : c)
      if (y.value >= field.modulus()) throw Error(Errc::InvalidArgument, "value outside F_q");
  }
}

void KeyEqParams::validate() const {
  if (nu < 1 || theta < 1) throw Error(Errc::InvalidArgument, "nu and theta must be >= 1");
}

ScalarMatrix build_key_matrix(const EvaluationTable& Y, const KeyEqParams& p) {
  p.validate();
  const PrimeField& F = Y.field;
  const std::size_t n = Y.n;
  const std::size_t L = Y.size();
  const auto nu = static_cast<std::size_t>(p.nu);
  const auto theta = static_cast<std::size_t>(p.theta);
  ScalarMatrix m(n * L, n * nu + theta, F);
  std::vector<Fq> powers(std::max(nu, theta));
  for (std::size_t j = 0; j < L; ++j) {
    Fq x = F.one();
    for (Fq& pw : powers) {
      pw = x;
      x = F.mul(x, Y.points[j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = i * L + j;
      for (std::size_t k = 0; k < nu; ++k) m(row, i * nu + k) = powers[k];
      const Fq minus_y = F.neg(Y.columns[j][i]);
      for (std::size_t k = 0; k < theta; ++k) m(row, n * nu + k) = F.mul(minus_y, powers[k]);
    }
  }
  return m;
}

SolutionSpace solve_key_equations(const EvaluationTable& Y, const KeyEqParams& p) {
  const ScalarMatrix m = build_key_matrix(Y, p);
  const PrimeField& F = Y.field;
  const auto nu = static_cast<std::size_t>(p.nu);
  const auto theta = static_cast<std::size_t>(p.theta);
  SolutionSpace S{p, {}};
  for (const auto& k : kernel_basis(m)) {
    std::vector<Polynomial> phi;
    phi.reserve(Y.n);
    for (std::size_t i = 0; i < Y.n; ++i) {
      phi.emplace_back(F, std::vector<Fq>(k.begin() + static_cast<std::ptrdiff_t>(i * nu),
                                          k.begin() + static_cast<std::ptrdiff_t>((i + 1) * nu)));
    }
    Polynomial psi(F, std::vector<Fq>(k.end() - static_cast<std::ptrdiff_t>(theta), k.end()));
    S.basis.push_back({PolyVector(std::move(phi)), std::move(psi)});
  }
  return S;
}

bool check(const EvaluationTable& Y, const KeyEqParams& p) {
  const ScalarMatrix m = build_key_matrix(Y, p);
  return rank(m) < m.cols();
}

RationalSolution find_solution(const SolutionSpace& S, const PLSInstance* certifier) {
  if (S.basis.empty()) throw Error(Errc::EmptySolutionSpace, "the key equations only admit (0, 0)");
  const KeyEqElement& first = S.basis.front();
  if (first.psi.is_zero()) throw Error(Errc::ZeroDenominator, "candidate denominator is zero");

  const Polynomial g = content_gcd(first.phi, first.psi);
  std::vector<Polynomial> v;
  v.reserve(first.phi.size());
  for (const Polynomial& e : first.phi) v.push_back(poly_divexact(e, g));
  Polynomial d = poly_divexact(first.psi, g);
  const Fq lead_inv = d.field().inv(d.leading());
  RationalSolution sol{PolyVector(std::move(v)).scaled(lead_inv), d.scaled(lead_inv)};

  for (std::size_t k = 1; k < S.basis.size(); ++k) {
    const KeyEqElement& e = S.basis[k];
    DivMod qr = divmod(e.psi, sol.d);
    if (!qr.remainder.is_zero() || e.phi != sol.v.scaled(qr.quotient)) {
      throw Error(Errc::RankAboveOne, "solution module is not generated by a single element");
    }
  }
  if (certifier != nullptr && !satisfies(*certifier, sol)) {
    throw Error(Errc::CertificationFailed, "A v != d b for the reconstructed candidate");
  }
  return sol;
}

RationalSolution find_solution(const EvaluationTable& Y, const KeyEqParams& p, const PLSInstance* certifier) {
  return find_solution(solve_key_equations(Y, p), certifier);
}

Polynomial error_locator(const PrimeField& field, const std::vector<Fq>& points,
                         const std::vector<std::size_t>& support) {
  Polynomial lambda = Polynomial::constant(field, field.one());
  for (std::size_t j : support) {
    if (j >= points.size()) throw Error(Errc::SupportOutOfRange, "error position beyond the table");
    lambda = lambda * Polynomial::linear_root(field, points[j]);
  }
  return lambda;
}

std::vector<Fq> pack_element(const KeyEqElement& e, const KeyEqParams& p) {
  const auto nu = static_cast<std::size_t>(p.nu);
  const auto theta = static_cast<std::size_t>(p.theta);
  std::vector<Fq> out(e.phi.size() * nu + theta);
  for (std::size_t i = 0; i < e.phi.size(); ++i) {
    if (e.phi[i].degree() >= p.nu) throw Error(Errc::InvalidArgument, "phi degree exceeds nu");
    for (std::size_t k = 0; k < e.phi[i].coeffs().size(); ++k) out[i * nu + k] = e.phi[i].coeffs()[k];
  }
  if (e.psi.degree() >= p.theta) throw Error(Errc::InvalidArgument, "psi degree exceeds theta");
  for (std::size_t k = 0; k < e.psi.coeffs().size(); ++k) out[e.phi.size() * nu + k] = e.psi.coeffs()[k];
  return out;
}

bool verify_space_structure(const SolutionSpace& S, const RationalSolution& truth, const Polynomial& lambda,
                            int delta) {
  const std::size_t expected = delta > 0 ? static_cast<std::size_t>(delta) : 0;
  if (S.dimension() != expected) return false;
  if (expected == 0) return true;

  const PolyVector lv = truth.v.scaled(lambda);
  const Polynomial ld = truth.d * lambda;
  for (const KeyEqElement& e : S.basis) {
    DivMod qr = divmod(e.psi, ld);
    if (!qr.remainder.is_zero() || qr.quotient.degree() >= delta) return false;
    if (e.phi != lv.scaled(qr.quotient)) return false;
  }

  // Converse inclusion: stacking the generators x^i (Lambda v, Lambda d) on
  // top of the basis must not raise the rank.
  const PrimeField& F = ld.field();
  const std::size_t width = truth.v.size() * static_cast<std::size_t>(S.params.nu) + static_cast<std::size_t>(S.params.theta);
  ScalarMatrix stacked(S.dimension() + expected, width, F);
  std::size_t row = 0;
  auto put = [&](const std::vector<Fq>& packed) {
    for (std::size_t c = 0; c < width; ++c) stacked(row, c) = packed[c];
    ++row;
  };
  try {
    for (const KeyEqElement& e : S.basis) put(pack_element(e, S.params));
    for (std::size_t i = 0; i < expected; ++i) {
      KeyEqElement g{lv.scaled(Polynomial::monomial(F, i, F.one())), ld.shifted(i)};
      put(pack_element(g, S.params));
    }
  } catch (const Error&) {
    return false;
  }
  return rank(stacked) == S.dimension();
}

}  // namespace plswe
