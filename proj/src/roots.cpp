#include "pok/roots.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "pok/errors.hpp"

namespace pok {
namespace {

constexpr double kGapBracketLow = 1e-9;
constexpr int kMaxBracketDoublings = 64;

void require_order(int k) {
  if (k < 2) throw std::invalid_argument("k must be >= 2, got " + std::to_string(k));
}

}  // namespace

double solve_monotone_root(const std::function<double(double)>& f, double lo,
                           double hi, const RootOptions& options) {
  if (!(options.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) {
    throw NumericalFailure("non-finite function value at bracket end");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw NoSignChange("no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }

  int retained = 0;  // -1: lo kept twice in a row, +1: hi kept (Illinois)
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= options.rel_tol * std::abs(mid)) return mid;

    double x = mid;
    if (options.accelerate) {
      x = (lo * fhi - hi * flo) / (fhi - flo);
      if (!(x > lo && x < hi)) x = mid;
    }
    const double fx = f(x);
    if (!std::isfinite(fx)) throw NumericalFailure("non-finite function value");
    if (fx == 0.0) return x;

    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
      if (options.accelerate && retained > 0) fhi *= 0.5;
      retained = 1;
    } else {
      hi = x;
      fhi = fx;
      if (options.accelerate && retained < 0) flo *= 0.5;
      retained = -1;
    }
  }
  throw MaxIterationsExceeded("root bracket not converged after " +
                              std::to_string(options.max_iterations) + " iterations");
}

double scaled_pmf_at_order(int k, double lambda) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  double sum = 0.0;
  double term = lambda;  // C(k-1, j-1) lambda^j / j! at j = 1
  for (int j = 1; j <= k; ++j) {
    sum += term;
    term *= (static_cast<double>(k - j) / j) * (lambda / (j + 1));
  }
  return sum;
}

double block_gap(int k, double lambda) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  // Running sums of the recurrence window:
  //   weighted = sum_{j=1..k} j p_{n-j},  plain = sum_{j=1..k} p_{n-j}
  // Only p_0 and p_1 ever leave the window before n = k+2.
  const double p0 = 1.0;
  double p1 = 0.0;
  double weighted = p0;
  double plain = p0;
  double prev = 0.0;
  double cur = p0;
  for (int n = 1; n <= k + 2; ++n) {
    prev = cur;
    cur = lambda * weighted / n;
    if (n == 1) p1 = cur;
    const int leaving = n - k;  // index dropping out of the next window
    const double out = leaving == 0 ? p0 : (leaving == 1 ? p1 : 0.0);
    weighted += plain + cur - (k + 1.0) * out;
    plain += cur - out;
  }
  return cur - prev;
}

ThresholdSet threshold_set(int k, double rel_tol) {
  require_order(k);
  RootOptions options;
  options.rel_tol = rel_tol;

  ThresholdSet out;
  out.k = k;
  out.bound_necessary = bound_necessary(k);
  out.bound_sufficient = bound_sufficient(k);

  // h_k(k; lambda) >= lambda with equality only at 0, so [0, c] brackets
  // h = c.
  out.r_k = solve_monotone_root(
      [k](double x) { return scaled_pmf_at_order(k, x) - 1.0; }, 0.0, 1.0, options);
  out.t_k = solve_monotone_root(
      [k](double x) { return scaled_pmf_at_order(k, x) - 2.0; }, 0.0, 2.0, options);

  auto gap = [k](double x) { return block_gap(k, x); };
  const double lo = kGapBracketLow;
  if (!(gap(lo) < 0.0)) {
    throw BracketFailure("p_{k+2} - p_{k+1} not negative at lambda=" +
                         std::to_string(lo));
  }
  double hi = out.bound_necessary;
  int doublings = 0;
  while (gap(hi) < 0.0) {
    if (++doublings > kMaxBracketDoublings) {
      throw BracketFailure("p_{k+2} - p_{k+1} has no sign change up to lambda=" +
                           std::to_string(hi));
    }
    hi *= 2.0;
  }
  out.lambda_k1k2 = solve_monotone_root(gap, lo, hi, options);
  return out;
}

bool verify_uniqueness(int k, int grid) {
  require_order(k);
  if (grid < 100) throw std::invalid_argument("grid must be >= 100");
  const double top = 10.0 * bound_necessary(k);
  const double bottom = 1e-6 * bound_necessary(k);
  const double log_span = std::log(top / bottom);
  int changes = 0;
  int last_sign = 0;
  for (int i = 1; i <= grid; ++i) {
    const double lambda = bottom * std::exp(log_span * i / grid);
    const double g = block_gap(k, lambda);
    const int sign = (g > 0.0) - (g < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes == 1;
}

}  // namespace pok
