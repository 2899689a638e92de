#include "plswe/polynomial.hpp"

#include <algorithm>
#include <utility>

#include "plswe/error.hpp"
#include "plswe/matrix.hpp"

namespace plswe {

Polynomial::Polynomial(const PrimeField& field, std::vector<Fq> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (Fq& c : coeffs_) c = Fq{c.value % field_.modulus()};
  normalize();
}

Polynomial Polynomial::from_ints(const PrimeField& field, std::initializer_list<std::int64_t> coeffs) {
  return from_ints(field, std::vector<std::int64_t>(coeffs));
}

Polynomial Polynomial::from_ints(const PrimeField& field, const std::vector<std::int64_t>& coeffs) {
  std::vector<Fq> c;
  c.reserve(coeffs.size());
  for (std::int64_t x : coeffs) c.push_back(field.element(x));
  return Polynomial(field, std::move(c));
}

Polynomial Polynomial::constant(const PrimeField& field, Fq c) { return Polynomial(field, {c}); }

Polynomial Polynomial::monomial(const PrimeField& field, std::size_t degree, Fq c) {
  std::vector<Fq> coeffs(degree + 1);
  coeffs[degree] = c;
  return Polynomial(field, std::move(coeffs));
}

Polynomial Polynomial::linear_root(const PrimeField& field, Fq a) {
  return Polynomial(field, {field.neg(a), field.one()});
}

void Polynomial::normalize() noexcept {
  while (!coeffs_.empty() && coeffs_.back().value == 0) coeffs_.pop_back();
}

Fq Polynomial::operator()(Fq alpha) const noexcept {
  Fq acc{0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = field_.add(field_.mul(acc, alpha), *it);
  }
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(leading()));
}

Polynomial Polynomial::scaled(Fq c) const {
  Polynomial r(field_);
  if (c.value == 0) return r;
  r.coeffs_.reserve(coeffs_.size());
  for (Fq a : coeffs_) r.coeffs_.push_back(field_.mul(a, c));
  return r;
}

Polynomial Polynomial::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  Polynomial r(field_);
  r.coeffs_.assign(k, Fq{0});
  r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
  if (g.coeffs_.size() > coeffs_.size()) coeffs_.resize(g.coeffs_.size());
  for (std::size_t i = 0; i < g.coeffs_.size(); ++i) coeffs_[i] = field_.add(coeffs_[i], g.coeffs_[i]);
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) {
  if (g.coeffs_.size() > coeffs_.size()) coeffs_.resize(g.coeffs_.size());
  for (std::size_t i = 0; i < g.coeffs_.size(); ++i) coeffs_[i] = field_.sub(coeffs_[i], g.coeffs_[i]);
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  const PrimeField& F = f.field_;
  Polynomial r(F);
  if (f.is_zero() || g.is_zero()) return r;
  const std::uint64_t q = F.modulus();
  std::vector<std::uint64_t> acc(f.coeffs_.size() + g.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
    const std::uint64_t a = f.coeffs_[i].value;
    if (a == 0) continue;
    for (std::size_t j = 0; j < g.coeffs_.size(); ++j) {
      acc[i + j] = (acc[i + j] + a * g.coeffs_[j].value) % q;
    }
  }
  r.coeffs_.reserve(acc.size());
  for (std::uint64_t c : acc) r.coeffs_.push_back(Fq{c});
  r.normalize();
  return r;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& f) {
  os << '[';
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) os << (i ? "," : "") << f.coeffs()[i].value;
  return os << ']';
}

DivMod divmod(const Polynomial& f, const Polynomial& g) {
  const PrimeField& F = f.field();
  if (g.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  if (f.degree() < g.degree()) return {Polynomial(F), f};
  std::vector<Fq> rem = f.coeffs();
  const std::vector<Fq>& den = g.coeffs();
  const std::size_t dg = den.size() - 1;
  std::vector<Fq> quo(rem.size() - dg);
  const Fq lead_inv = F.inv(g.leading());
  for (std::size_t k = quo.size(); k-- > 0;) {
    Fq c = F.mul(rem[k + dg], lead_inv);
    quo[k] = c;
    if (c.value == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) rem[k + j] = F.sub(rem[k + j], F.mul(c, den[j]));
  }
  rem.resize(dg);
  return {Polynomial(F, std::move(quo)), Polynomial(F, std::move(rem))};
}

Polynomial poly_gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() && g.is_zero()) throw Error(Errc::BothZero, "gcd(0, 0) is undefined");
  Polynomial a = f;
  Polynomial b = g;
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial poly_divexact(const Polynomial& f, const Polynomial& g) {
  DivMod qr = divmod(f, g);
  if (!qr.remainder.is_zero()) throw Error(Errc::InexactDivision, "divisor does not divide dividend");
  return std::move(qr.quotient);
}

int PolyVector::degree() const noexcept {
  int d = kDegreeOfZero;
  for (const Polynomial& p : entries_) d = std::max(d, p.degree());
  return d;
}

bool PolyVector::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::vector<Fq> PolyVector::operator()(Fq alpha) const {
  std::vector<Fq> out;
  out.reserve(entries_.size());
  for (const Polynomial& p : entries_) out.push_back(p(alpha));
  return out;
}

PolyVector PolyVector::scaled(const Polynomial& p) const {
  std::vector<Polynomial> out;
  out.reserve(entries_.size());
  for (const Polynomial& e : entries_) out.push_back(e * p);
  return PolyVector(std::move(out));
}

PolyVector PolyVector::scaled(Fq c) const {
  std::vector<Polynomial> out;
  out.reserve(entries_.size());
  for (const Polynomial& e : entries_) out.push_back(e.scaled(c));
  return PolyVector(std::move(out));
}

int PolyMatrix::degree() const noexcept {
  int d = kDegreeOfZero;
  for (const Polynomial& p : entries_) d = std::max(d, p.degree());
  return d;
}

ScalarMatrix PolyMatrix::evaluate(Fq alpha) const {
  ScalarMatrix m(rows_, cols_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c)(alpha);
  return m;
}

PolyVector PolyMatrix::operator*(const PolyVector& x) const {
  if (x.size() != cols_) throw Error(Errc::InvalidArgument, "dimension mismatch in matrix-vector product");
  PolyVector out(rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * x[c];
  }
  return out;
}

Polynomial content_gcd(const PolyVector& v, const Polynomial& d) {
  Polynomial g = d;
  for (const Polynomial& e : v) {
    if (e.is_zero()) continue;
    g = g.is_zero() ? e.monic() : poly_gcd(g, e);
  }
  if (g.is_zero()) throw Error(Errc::AllZero, "content of the zero vector");
  return g.monic();
}

}  // namespace plswe
