#include "plswe/matrix.hpp"

#include <utility>

#include "plswe/error.hpp"

namespace plswe {

ScalarMatrix ScalarMatrix::from_ints(const PrimeField& field, std::size_t rows, std::size_t cols,
                                     const std::vector<std::int64_t>& entries) {
  if (entries.size() != rows * cols) throw Error(Errc::InvalidArgument, "entry count != rows * cols");
  ScalarMatrix m(rows, cols, field);
  for (std::size_t i = 0; i < entries.size(); ++i) m.data_[i] = field.element(entries[i]);
  return m;
}

ScalarMatrix ScalarMatrix::identity(std::size_t n, const PrimeField& field) {
  ScalarMatrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

std::vector<Fq> ScalarMatrix::operator*(std::span<const Fq> x) const {
  if (x.size() != cols_) throw Error(Errc::InvalidArgument, "dimension mismatch in matrix-vector product");
  std::vector<Fq> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Fq acc{0};
    for (std::size_t c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul((*this)(r, c), x[c]));
    out[r] = acc;
  }
  return out;
}

RowEchelon row_echelon(ScalarMatrix m) {
  const PrimeField& F = m.field();
  const std::uint64_t q = F.modulus();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows; ++c) {
    std::size_t p = top;
    while (p < rows && m(p, c).value == 0) ++p;
    if (p == rows) continue;
    if (p != top) {
      for (std::size_t k = c; k < cols; ++k) std::swap(m(p, k), m(top, k));
    }
    const Fq scale = F.inv(m(top, c));
    for (std::size_t k = c; k < cols; ++k) m(top, k) = F.mul(m(top, k), scale);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == top) continue;
      const std::uint64_t f = m(r, c).value;
      if (f == 0) continue;
      const std::uint64_t nf = q - f;
      for (std::size_t k = c; k < cols; ++k) {
        const std::uint64_t pk = m(top, k).value;
        if (pk != 0) m(r, k).value = (m(r, k).value + nf * pk) % q;
      }
    }
    pivots.push_back(c);
    ++top;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const ScalarMatrix& m) { return row_echelon(m).pivots.size(); }

std::vector<std::vector<Fq>> kernel_basis(const ScalarMatrix& m) {
  const PrimeField& F = m.field();
  RowEchelon e = row_echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;

  std::vector<std::vector<Fq>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Fq> k(cols);
    k[f] = F.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k[e.pivots[r]] = F.neg(e.reduced(r, f));
    basis.push_back(std::move(k));
  }
  return basis;
}

std::optional<std::vector<Fq>> solve_square(const ScalarMatrix& a, std::span<const Fq> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error(Errc::InvalidArgument, "solve_square expects a square system");
  ScalarMatrix aug(n, n + 1, a.field());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  RowEchelon e = row_echelon(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  std::vector<Fq> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = e.reduced(r, n);
  return x;
}

Fq determinant(const ScalarMatrix& a) {
  const PrimeField& F = a.field();
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(Errc::InvalidArgument, "determinant of a non-square matrix");
  ScalarMatrix m = a;
  Fq det = F.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).value == 0) ++p;
    if (p == n) return F.zero();
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    const Fq inv = F.inv(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      const Fq f = F.mul(m(r, c), inv);
      if (f.value == 0) continue;
      for (std::size_t k = c; k < n; ++k) m(r, k) = F.sub(m(r, k), F.mul(f, m(c, k)));
    }
  }
  return det;
}

}  // namespace plswe
