#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include <boost/rational.hpp>

namespace plswe {

using Rational = boost::rational<std::int64_t>;

/// Parses an exact fraction written "p/q" (or an integer "p"). Decimal
/// notation is rejected so floors stay exact.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

/// floor(r) for r >= 0.
std::int64_t floor_nonneg(const Rational& r);

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

/// Degree information known to the decoder: the system size, strict bounds
/// N > deg(v) and D > deg(d), and the degrees (or bounds) of A and b.
struct DegreeContext {
  int n = 1;
  int N = 1;
  int D = 1;
  int degA = 0;
  int degb = 0;

  /// Throws InvalidArgument unless n, N, D >= 1 and degA, degb >= 0.
  void validate() const;
};

struct FixedBudget {
  int tau = 0;
};
struct LinearRateBudget {
  Rational rho{0};
};
using ErrorBudget = std::variant<FixedBudget, LinearRateBudget>;

/// Throws RateOutOfRange unless 0 <= rho < 1/2.
void check_rate(const Rational& rho);

// Base evaluation count for key-equation parameters (nu, theta):
//   min{ max{N-1+theta, D-1+nu}, max{degA+nu, degb+theta} }.
// Evaluated as written for any integer arguments, including the true degrees
// of v and d which may be 0.
int eval_count_base(const DegreeContext& ctx, int nu, int theta);

/// Count guaranteeing uniqueness for every error pattern of weight <= tau.
int l_kpsw(const DegreeContext& ctx, int tau);

/// Reduced count, valid for all but a (D+tau)/q fraction of uniformly random
/// errors.
int l_glz(const DegreeContext& ctx, int tau);

/// Dimension of <x^i Lambda v, x^i Lambda d>; nonpositive means trivial.
int delta(int nu, int theta, int degv, int degd, int errors);

struct LinearCounts {
  int L = 0;
  int tau = 0;
};

/// L = floor((base + 1) / (1 - rho/divisor)), tau = floor(rho L), where base
/// is the value of eval_count_base at the parameters being tried.
LinearCounts linear_counts_from_base(int base, const Rational& rho, int radius_divisor);
LinearCounts linear_counts(const DegreeContext& ctx, const Rational& rho, int nu, int theta, int radius_divisor);

using ErrorCountFn = std::function<int(int)>;

/// Least L >= eval_count_base(1,1) + additive with
///   L = eval_count_base(degv, degd) + |E(L)| + 1 + additive,
/// found by unit increments (the way the fixed-bound driver advances).
/// `additive` is tau for the deterministic count and ceil(tau/n) for the
/// random-error count. Throws NoFixedPoint past the cap (default
/// 4 * (base + additive + 2)).
int predict_stop_fixed(const DegreeContext& ctx, int additive, int degv, int degd, const ErrorCountFn& errors,
                       std::optional<int> cap = std::nullopt);

/// Exact stopping point of the linear-bound drivers in the favorable case:
/// the first L^num from eval_count_base(1,1)+1 upward such that
/// L^num >= eval_count_base(degv,degd) + |E(L)| + 2 with
/// L = floor(L^num / (1 - rho/divisor)). Returns that L.
int predict_stop_linear(const DegreeContext& ctx, const Rational& rho, int degv, int degd, int radius_divisor,
                        const ErrorCountFn& errors, std::optional<int> cap = std::nullopt);

/// floor((eval_count_base(degv,degd) + 2) / (1 - (1 + 1/divisor) rho)).
int stop_upper_bound_linear(const DegreeContext& ctx, const Rational& rho, int degv, int degd, int radius_divisor);

/// Ceiling when the actual error rate rho_actual < rho is smaller than
/// declared: floor((base + 2) / (1 - rho_actual - rho/divisor)).
int stop_upper_bound_sensitive(const DegreeContext& ctx, const Rational& rho, const Rational& rho_actual, int degv,
                               int degd, int radius_divisor);

}  // namespace plswe
