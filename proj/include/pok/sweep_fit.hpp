#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "pok/roots.hpp"

namespace pok {

inline constexpr int kDeskScaleKMax = 2000;

/// Number of worker threads to use when `jobs` is 0.
unsigned default_jobs();

/// threshold_set for every k in ks. Output order matches ks regardless of
/// scheduling. The first failing entry (in ks order) is rethrown as
/// SweepError.
std::vector<ThresholdSet> sweep(std::span<const int> ks, double rel_tol = 1e-12,
                                unsigned jobs = 0);

/// k_min..k_max inclusive. Requires 2 <= k_min <= k_max.
std::vector<ThresholdSet> sweep(int k_min, int k_max, double rel_tol = 1e-12,
                                unsigned jobs = 0);

/// Every k up to `dense_until`, then `log_points` log-spaced values up to
/// k_max (deduplicated, ascending, always including k_max).
std::vector<int> thinned_k_values(int k_min, int k_max, int dense_until = 200,
                                  int log_points = 200);

struct FitPoint {
  int k = 0;
  double lambda_k1k2 = 0.0;
};

std::vector<FitPoint> fit_points(std::span<const ThresholdSet> rows);

/// Least squares line alpha * k + beta through 1 / lambda_k1k2.
/// Residuals are (alpha * k + beta) - 1 / lambda_k1k2.
struct FitResult {
  double alpha = 0.0;
  double beta = 0.0;
  double max_residual = 0.0;
  double min_residual = 0.0;
  std::pair<int, int> k_range{0, 0};
  std::vector<double> residuals;  // same order as the input points

  double predict(double k) const noexcept { return alpha * k + beta; }
};

/// Requires at least 3 points with lambda > 0; throws DegenerateFit if every
/// k is the same.
FitResult fit_inverse_root(std::span<const FitPoint> data);

struct ConjectureScanRow {
  int k = 0;
  int cap = 0;
  double lambda_below = 0.0;  // 9/(4k-1) * (1 - 1e-9)
  bool below_decreasing = false;
  double lambda_above = 0.0;  // 9.05/(4k-1)
  bool above_violates = false;

  bool pass() const noexcept { return below_decreasing && above_violates; }
};

/// Structure reports at lambda just below 9/(4k-1) and at 9.05/(4k-1) with
/// cap = cap_mult * k. Requires 2 <= k_min <= k_max, cap_mult >= 4.
std::vector<ConjectureScanRow> conjecture_51_scan(int k_min, int k_max,
                                                  int cap_mult = 6,
                                                  unsigned jobs = 0);

// Output formats.
void write_table1_csv(std::ostream& out, std::span<const ThresholdSet> rows);
void write_thresholds_csv(std::ostream& out, std::span<const ThresholdSet> rows);
void write_fig4_csv(std::ostream& out, std::span<const FitPoint> data,
                    const FitResult& fit);
void write_fig5_csv(std::ostream& out, std::span<const FitPoint> data,
                    const FitResult& fit);
void write_fit_json(std::ostream& out, const FitResult& fit);
void write_conjecture_scan_csv(std::ostream& out,
                               std::span<const ConjectureScanRow> rows);

}  // namespace pok
