#pragma once

#include <cstdint>
#include <vector>

#include "pok/params.hpp"
#include "pok/pmf.hpp"

namespace pok {

/// Delta_m(n) for n = first_n .. first_n + values.size() - 1.
struct DifferenceTable {
  Params params;
  int order = 0;
  int first_n = 0;
  std::vector<double> values;

  int last_n() const noexcept {
    return first_n + static_cast<int>(values.size()) - 1;
  }
  double at(int n) const { return values.at(static_cast<std::size_t>(n - first_n)); }
};

// Backward differences of the scaled pmf:
//   Delta_0(n) = p_n
//   Delta_m(n) = Delta_{m-1}(n) - Delta_{m-1}(n-1)
//              = sum_{j=0..m} C(m, j) (-1)^j p_{n-j}

/// Binomial stencil over a floating-point table. Requires 0 <= m <= n <=
/// table.n_max(). Cancellation grows like C(m, m/2); use difference_exact for
/// high orders.
double difference(int m, int n, const ScaledPmfTable& table);

/// Delta_m(n) for every n in [m, table.n_max()].
DifferenceTable difference_table(const ScaledPmfTable& table, int m);

/// Integer coefficients (by power of lambda, scaled by d!) of Delta_m(n),
/// built by applying the recursion to exact composition counts.
std::vector<std::int64_t> difference_coefficients(int k, int m, int n);

/// Delta_m(n) evaluated from difference_coefficients. Free of cancellation
/// whenever the coefficients share a sign.
double difference_exact(const Params& params, int m, int n);

/// sum_{j=m+1..n} C(n-m-1, j-m-1) lambda^j / j!, valid for 1 <= m <= k-1
/// and m+1 <= n <= k. Throws std::invalid_argument outside that window.
double difference_closed_form(const Params& params, int m, int n);

struct MonotonicityCell {
  int m = 0;
  int n = 0;
  double delta_recursive = 0.0;
  double delta_closed = 0.0;
  double rel_err = 0.0;
};

struct AbsoluteMonotonicityReport {
  Params params;
  std::vector<MonotonicityCell> cells;  // ordered by (m, n)
  double max_rel_discrepancy = 0.0;
  bool all_positive = true;
};

/// Every Delta_m(n) with m in [1, k-1], n in [m+1, k], computed by the
/// recursion and by the closed form. Requires k >= 2.
AbsoluteMonotonicityReport absolute_monotonicity_report(const Params& params);

}  // namespace pok
