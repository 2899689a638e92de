#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <vector>

#include "plswe/field.hpp"

namespace plswe {

/// Degree of the zero polynomial. Sits below every degree that can occur in
/// practice and survives a few additions without overflowing, so formulas
/// such as deg(P) < delta need no special casing.
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min() / 8;

class ScalarMatrix;

/// Dense univariate polynomial over F_q, coefficients lowest degree first,
/// with no trailing zeros.
class Polynomial {
 public:
  explicit Polynomial(const PrimeField& field) : field_(field) {}
  Polynomial(const PrimeField& field, std::vector<Fq> coeffs);
  /// Coefficients given as integers (reduced mod q), lowest degree first.
  static Polynomial from_ints(const PrimeField& field, std::initializer_list<std::int64_t> coeffs);
  static Polynomial from_ints(const PrimeField& field, const std::vector<std::int64_t>& coeffs);
  static Polynomial constant(const PrimeField& field, Fq c);
  static Polynomial monomial(const PrimeField& field, std::size_t degree, Fq c);
  /// x - a
  static Polynomial linear_root(const PrimeField& field, Fq a);

  const PrimeField& field() const noexcept { return field_; }
  const std::vector<Fq>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept {
    return coeffs_.empty() ? kDegreeOfZero : static_cast<int>(coeffs_.size()) - 1;
  }
  Fq coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Fq{0}; }
  Fq leading() const noexcept { return coeffs_.empty() ? Fq{0} : coeffs_.back(); }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back().value == 1; }

  /// Horner evaluation.
  Fq operator()(Fq alpha) const noexcept;

  Polynomial monic() const;
  Polynomial scaled(Fq c) const;
  Polynomial shifted(std::size_t k) const;  // x^k * f

  Polynomial& operator+=(const Polynomial& g);
  Polynomial& operator-=(const Polynomial& g);
  friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
  friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    return f.field_ == g.field_ && f.coeffs_ == g.coeffs_;
  }

 private:
  void normalize() noexcept;

  PrimeField field_;
  std::vector<Fq> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& f);

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

/// Euclidean division; throws DivisionByZero when g = 0.
DivMod divmod(const Polynomial& f, const Polynomial& g);

/// Monic gcd; throws BothZero when f = g = 0.
Polynomial poly_gcd(const Polynomial& f, const Polynomial& g);

/// f / g when g divides f; throws InexactDivision or DivisionByZero.
Polynomial poly_divexact(const Polynomial& f, const Polynomial& g);

/// Column of n polynomials. Its degree is the largest entry degree.
class PolyVector {
 public:
  PolyVector() = default;
  explicit PolyVector(std::vector<Polynomial> entries) : entries_(std::move(entries)) {}
  PolyVector(std::size_t n, const PrimeField& field) : entries_(n, Polynomial(field)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  const Polynomial& operator[](std::size_t i) const { return entries_[i]; }
  Polynomial& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Polynomial>& entries() const noexcept { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  int degree() const noexcept;
  bool is_zero() const noexcept;
  std::vector<Fq> operator()(Fq alpha) const;
  PolyVector scaled(const Polynomial& p) const;
  PolyVector scaled(Fq c) const;

  friend bool operator==(const PolyVector&, const PolyVector&) = default;

 private:
  std::vector<Polynomial> entries_;
};

/// Dense rows x cols polynomial matrix, row-major.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols, const PrimeField& field)
      : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(field)) {}

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  int degree() const noexcept;
  ScalarMatrix evaluate(Fq alpha) const;
  PolyVector operator*(const PolyVector& x) const;

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
};

/// Monic gcd of every entry of v together with d; throws AllZero when
/// everything vanishes.
Polynomial content_gcd(const PolyVector& v, const Polynomial& d);

}  // namespace plswe
