#pragma once

#include <functional>

namespace pok {

struct RootOptions {
  double rel_tol = 1e-12;
  int max_iterations = 200;
  // Illinois-modified regula falsi steps instead of plain bisection. The
  // bracket is kept either way.
  bool accelerate = false;
};

/// Root of a function with a sign change on [lo, hi]. Iterates until the
/// bracket width is at most rel_tol * |midpoint| and returns the midpoint.
///
/// Throws NoSignChange if f(lo), f(hi) do not straddle zero and
/// MaxIterationsExceeded if the bracket has not shrunk enough in time.
double solve_monotone_root(const std::function<double(double)>& f, double lo,
                           double hi, const RootOptions& options = {});

/// h_k(k; lambda) = sum_{j=1..k} C(k-1, j-1) lambda^j / j!.
double scaled_pmf_at_order(int k, double lambda);

/// p_{k+2} - p_{k+1} from one recurrence pass.
double block_gap(int k, double lambda);

/// Characteristic lambda values for one order k.
struct ThresholdSet {
  int k = 0;
  double r_k = 0.0;               // h_k(k; r_k) = 1
  double t_k = 0.0;               // h_k(k; t_k) = 2
  double lambda_k1k2 = 0.0;       // p_{k+2} = p_{k+1}
  double bound_necessary = 0.0;   // 4 / (k+1)
  double bound_sufficient = 0.0;  // 9 / (4k-1)

  double difference() const noexcept { return lambda_k1k2 - bound_sufficient; }
};

inline double bound_necessary(int k) { return 4.0 / (k + 1.0); }
inline double bound_sufficient(int k) { return 9.0 / (4.0 * k - 1.0); }

/// Requires k >= 2. Throws BracketFailure if p_{k+2} - p_{k+1} has no sign
/// change in the search interval.
ThresholdSet threshold_set(int k, double rel_tol = 1e-12);

/// Scans p_{k+2} - p_{k+1} on `grid` log-spaced points over
/// (1e-6 * 4/(k+1), 10 * 4/(k+1)] and reports whether it changes sign
/// exactly once.
bool verify_uniqueness(int k, int grid);

}  // namespace pok
