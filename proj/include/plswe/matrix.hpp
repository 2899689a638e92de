#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "plswe/field.hpp"

namespace plswe {

/// Dense row-major matrix over F_q.
class ScalarMatrix {
 public:
  ScalarMatrix(std::size_t rows, std::size_t cols, const PrimeField& field)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}
  static ScalarMatrix from_ints(const PrimeField& field, std::size_t rows, std::size_t cols,
                                const std::vector<std::int64_t>& entries);
  static ScalarMatrix identity(std::size_t n, const PrimeField& field);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Fq operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Fq& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Fq> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<Fq> operator*(std::span<const Fq> x) const;

  friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Fq> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct RowEchelon {
  ScalarMatrix reduced;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination; the pivot of each column is the first row (by
/// position) holding a nonzero entry.
RowEchelon row_echelon(ScalarMatrix m);

std::size_t rank(const ScalarMatrix& m);

/// Basis of {k : M k = 0}. One vector per free column f of the reduced
/// form: it has a 1 at f, zeros at the other free columns, and the pivot
/// coordinates are fixed by the reduced rows. The basis is therefore a
/// canonical function of the kernel and the column order.
std::vector<std::vector<Fq>> kernel_basis(const ScalarMatrix& m);

/// Solution of the square system A x = b, or nullopt when A is singular.
std::optional<std::vector<Fq>> solve_square(const ScalarMatrix& a, std::span<const Fq> b);

Fq determinant(const ScalarMatrix& a);

}  // namespace plswe
