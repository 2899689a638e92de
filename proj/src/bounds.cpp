#include "plswe/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "plswe/error.hpp"

namespace plswe {

namespace {

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(Errc::InvalidArgument, "not an integer: '" + s + "'");
  }
  return v;
}

// 1 - rho / divisor
Rational complement(const Rational& rho, int divisor) { return Rational(1) - rho / Rational(divisor); }

void check_divisor(int divisor) {
  if (divisor < 1) throw Error(Errc::InvalidArgument, "radius divisor must be >= 1");
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t floor_nonneg(const Rational& r) {
  if (r < 0) throw Error(Errc::InvalidArgument, "floor_nonneg of a negative rational");
  return r.numerator() / r.denominator();
}

void DegreeContext::validate() const {
  if (n < 1 || N < 1 || D < 1) throw Error(Errc::InvalidArgument, "n, N, D must all be >= 1");
  if (degA < 0 || degb < 0) throw Error(Errc::InvalidArgument, "deg(A), deg(b) must be >= 0");
}

void check_rate(const Rational& rho) {
  if (rho < 0 || rho >= Rational(1, 2)) {
    throw Error(Errc::RateOutOfRange, "error rate must satisfy 0 <= rho < 1/2, got " + to_string(rho));
  }
}

int eval_count_base(const DegreeContext& ctx, int nu, int theta) {
  const int rfr = std::max(ctx.N - 1 + theta, ctx.D - 1 + nu);
  const int pls = std::max(ctx.degA + nu, ctx.degb + theta);
  return std::min(rfr, pls);
}

int l_kpsw(const DegreeContext& ctx, int tau) {
  if (tau < 0) throw Error(Errc::InvalidArgument, "tau must be >= 0");
  return eval_count_base(ctx, ctx.N + tau, ctx.D + tau) + tau;
}

int l_glz(const DegreeContext& ctx, int tau) {
  if (tau < 0) throw Error(Errc::InvalidArgument, "tau must be >= 0");
  return eval_count_base(ctx, ctx.N + tau, ctx.D + tau) + ceil_div(tau, ctx.n);
}

int delta(int nu, int theta, int degv, int degd, int errors) {
  return std::min(nu - (degv + errors), theta - (degd + errors));
}

LinearCounts linear_counts_from_base(int base, const Rational& rho, int radius_divisor) {
  check_rate(rho);
  check_divisor(radius_divisor);
  const auto L = static_cast<int>(floor_nonneg(Rational(base + 1) / complement(rho, radius_divisor)));
  const auto tau = static_cast<int>(floor_nonneg(rho * L));
  return {L, tau};
}

LinearCounts linear_counts(const DegreeContext& ctx, const Rational& rho, int nu, int theta, int radius_divisor) {
  return linear_counts_from_base(eval_count_base(ctx, nu, theta), rho, radius_divisor);
}

int predict_stop_fixed(const DegreeContext& ctx, int additive, int degv, int degd, const ErrorCountFn& errors,
                       std::optional<int> cap) {
  if (additive < 0) throw Error(Errc::InvalidArgument, "additive term must be >= 0");
  const int base = eval_count_base(ctx, degv, degd);
  const int limit = cap.value_or(4 * (base + additive + 2));
  auto target = [&](int L) { return base + errors(L) + 1 + additive; };
  int L = eval_count_base(ctx, 1, 1) + additive;
  while (L <= limit) {
    const int t = target(L);
    if (t == L) return L;
    if (t < L) break;  // only reachable when the error count decreases
    ++L;
  }
  throw Error(Errc::NoFixedPoint, "no stopping point found up to L = " + std::to_string(limit));
}

int predict_stop_linear(const DegreeContext& ctx, const Rational& rho, int degv, int degd, int radius_divisor,
                        const ErrorCountFn& errors, std::optional<int> cap) {
  check_rate(rho);
  check_divisor(radius_divisor);
  const int base = eval_count_base(ctx, degv, degd);
  const Rational comp = complement(rho, radius_divisor);
  const int limit = cap.value_or(4 * stop_upper_bound_linear(ctx, rho, degv, degd, radius_divisor) + 8);
  for (int lnum = eval_count_base(ctx, 1, 1) + 1;; ++lnum) {
    const auto L = static_cast<int>(floor_nonneg(Rational(lnum) / comp));
    if (L > limit) break;
    if (lnum >= base + errors(L) + 2) return L;
  }
  throw Error(Errc::NoFixedPoint, "no stopping point found up to L = " + std::to_string(limit));
}

int stop_upper_bound_linear(const DegreeContext& ctx, const Rational& rho, int degv, int degd, int radius_divisor) {
  check_rate(rho);
  check_divisor(radius_divisor);
  const int base = eval_count_base(ctx, degv, degd);
  const Rational denom = Rational(1) - (Rational(1) + Rational(1, radius_divisor)) * rho;
  return static_cast<int>(floor_nonneg(Rational(base + 2) / denom));
}

int stop_upper_bound_sensitive(const DegreeContext& ctx, const Rational& rho, const Rational& rho_actual, int degv,
                               int degd, int radius_divisor) {
  check_rate(rho);
  check_divisor(radius_divisor);
  if (rho_actual < 0 || rho_actual > rho) {
    throw Error(Errc::RateOutOfRange, "actual rate must satisfy 0 <= rho' <= rho");
  }
  const int base = eval_count_base(ctx, degv, degd);
  const Rational denom = complement(rho, radius_divisor) - rho_actual;
  return static_cast<int>(floor_nonneg(Rational(base + 2) / denom));
}

}  // namespace plswe
