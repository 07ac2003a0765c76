#include "pok/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pok {
namespace {

// sum_{j=lo..hi} C(hi-lo, j-lo) lambda^j / j!
double shifted_binomial_series(double lambda, int lo, int hi) {
  if (hi < lo) return 0.0;
  double power = 1.0;
  for (int j = 1; j <= lo; ++j) power *= lambda / j;
  const int top = hi - lo;
  double binom = 1.0;
  double sum = 0.0;
  for (int j = lo; j <= hi; ++j) {
    sum += binom * power;
    const int i = j - lo;
    binom = binom * (top - i) / (i + 1);
    power *= lambda / (j + 1);
  }
  return sum;
}

constexpr int kRescaleExponent = 500;

}  // namespace

int default_tail_cap(int k) { return std::max(6 * k, 200); }

double block_difference_kp1_2k(const Params& params, int n) {
  const int k = params.k();
  if (n < k + 2 || n > 2 * k) {
    throw std::invalid_argument("block difference needs k+2 <= n <= 2k (n=" +
                                std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  const double lambda = params.lambda();
  return shifted_binomial_series(lambda, 2, n) -
         lambda * shifted_binomial_series(lambda, 1, n - k - 1);
}

StructureReport structure_report(const Params& params, int cap, double tie_rel_tol) {
  const int k = params.k();
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (cap < 2 * k) throw std::invalid_argument("cap must be >= 2k");
  const double lambda = params.lambda();

  StructureReport report{params};
  report.cap = cap;
  report.decreasing_on_block = true;
  report.concave_on_block = true;
  report.closest_rel_gap = std::numeric_limits<double>::infinity();

  // Ring buffer of the last k+1 values, all on a common scale. The
  // recurrence is linear, so the window is rescaled by powers of two when it
  // drifts towards underflow or overflow; only ratios are ever compared.
  const int width = k + 1;
  std::vector<double> ring(static_cast<std::size_t>(width), 0.0);
  auto at = [&](int n) -> double& { return ring[static_cast<std::size_t>(n % width)]; };
  at(0) = 1.0;

  for (int n = 1; n <= cap; ++n) {
    double s = 0.0;
    const int jmax = std::min(k, n);
    for (int j = 1; j <= jmax; ++j) s += j * at(n - j);
    at(n) = lambda * s / n;

    const double cur = at(n);
    const double prev = at(n - 1);
    if (n - 1 >= k) {
      const int i = n - 1;  // compares p_{i+1} against p_i
      const double gap = cur - prev;
      if (!(gap < 0.0)) {
        if (!report.first_violation) report.first_violation = i;
        if (i < 2 * k) report.decreasing_on_block = false;
      }
      const double rel_gap = std::abs(gap) / prev;
      if (rel_gap < tie_rel_tol) report.marginal.push_back(i);
      if (rel_gap < report.closest_rel_gap) {
        report.closest_rel_gap = rel_gap;
        report.closest_pair = i;
      }
    }
    if (n >= k + 3 && n <= 2 * k) {
      const double second = cur - 2.0 * prev + at(n - 2);
      if (!(second < 0.0)) report.concave_on_block = false;
    }

    double largest = 0.0;
    for (int j = 0; j < std::min(width, n + 1); ++j) largest = std::max(largest, at(n - j));
    if (largest > 0.0) {
      int exponent = 0;
      std::frexp(largest, &exponent);
      int shift = 0;
      if (exponent < -kRescaleExponent) shift = kRescaleExponent;
      if (exponent > kRescaleExponent) shift = -kRescaleExponent;
      if (shift != 0) {
        for (auto& v : ring) v = std::ldexp(v, shift);
      }
    }
  }
  report.decreasing_tail_to = report.first_violation ? *report.first_violation : cap;
  return report;
}

}  // namespace pok
