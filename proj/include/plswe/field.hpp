#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

namespace plswe {

/// Canonical residue in [0, q). Only a PrimeField produces these, so the
/// invariant value < q holds for every element in circulation.
struct Fq {
  std::uint64_t value = 0;

  friend constexpr bool operator==(Fq, Fq) = default;
  friend constexpr auto operator<=>(Fq, Fq) = default;
};

inline std::ostream& operator<<(std::ostream& os, Fq a) { return os << a.value; }

/// Deterministic primality test, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// The prime field F_q. Moduli are limited to 3 <= q < 2^32 so products of
/// two residues fit in 64 bits.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const noexcept { return q_; }

  Fq zero() const noexcept { return Fq{0}; }
  Fq one() const noexcept { return Fq{1}; }
  Fq element(std::int64_t x) const noexcept;

  Fq add(Fq a, Fq b) const noexcept {
    std::uint64_t s = a.value + b.value;
    return Fq{s >= q_ ? s - q_ : s};
  }
  Fq sub(Fq a, Fq b) const noexcept {
    return Fq{a.value >= b.value ? a.value - b.value : a.value + q_ - b.value};
  }
  Fq neg(Fq a) const noexcept { return Fq{a.value == 0 ? 0 : q_ - a.value}; }
  Fq mul(Fq a, Fq b) const noexcept { return Fq{(a.value * b.value) % q_}; }
  Fq pow(Fq a, std::uint64_t e) const noexcept;
  /// Throws Error(ZeroInverse) on a = 0.
  Fq inv(Fq a) const;
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t q_;
};

inline Fq field_inv(Fq a, const PrimeField& field) { return field.inv(a); }

}  // namespace plswe
