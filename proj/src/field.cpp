#include "plswe/field.hpp"

#include <array>
#include <string>

#include "plswe/error.hpp"

namespace plswe {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotPrime: return "NotPrime";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::BothZero: return "BothZero";
    case Errc::InexactDivision: return "InexactDivision";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::AllZero: return "AllZero";
    case Errc::RateOutOfRange: return "RateOutOfRange";
    case Errc::NoFixedPoint: return "NoFixedPoint";
    case Errc::EmptySolutionSpace: return "EmptySolutionSpace";
    case Errc::RankAboveOne: return "RankAboveOne";
    case Errc::CertificationFailed: return "CertificationFailed";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::DegenerateSystem: return "DegenerateSystem";
    case Errc::RankDropPoint: return "RankDropPoint";
    case Errc::SupportOutOfRange: return "SupportOutOfRange";
    case Errc::DenominatorVanishes: return "DenominatorVanishes";
    case Errc::SingularEvaluation: return "SingularEvaluation";
    case Errc::BudgetViolated: return "BudgetViolated";
    case Errc::MaxLExceeded: return "MaxLExceeded";
  }
  return "Unknown";
}

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Miller-Rabin with the first twelve primes as witnesses is exact below 3.3e24.
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q < 3 || q >= (std::uint64_t{1} << 32)) {
    throw Error(Errc::InvalidArgument, "modulus must satisfy 3 <= q < 2^32, got " + std::to_string(q));
  }
  if (!is_prime(q)) throw Error(Errc::NotPrime, "q not prime: " + std::to_string(q));
}

Fq PrimeField::element(std::int64_t x) const noexcept {
  auto m = static_cast<std::int64_t>(q_);
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return Fq{static_cast<std::uint64_t>(r)};
}

Fq PrimeField::pow(Fq a, std::uint64_t e) const noexcept {
  Fq r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fq PrimeField::inv(Fq a) const {
  if (a.value == 0) throw Error(Errc::ZeroInverse, "inverse of zero");
  return pow(a, q_ - 2);
}

}  // namespace plswe
