#include "pok/differences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pok/composition.hpp"
#include "pok/errors.hpp"

namespace pok {
namespace {

void check_order(int m, int n) {
  if (m < 0) throw std::invalid_argument("order m must be >= 0");
  if (n < m) {
    throw std::invalid_argument("Delta_m(n) needs n >= m (m=" + std::to_string(m) +
                                ", n=" + std::to_string(n) + ")");
  }
}

// Delta_m(n) coefficient vectors for n = 0..table.n_max(), m applied by the
// recursion. Entries with n < m are left empty.
std::vector<std::vector<std::int64_t>> difference_rows(const CompositionTable& table,
                                                       int m) {
  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(static_cast<std::size_t>(table.n_max()) + 1);
  for (int n = 0; n <= table.n_max(); ++n) rows.push_back(table.row(n));
  for (int order = 1; order <= m; ++order) {
    // Walk downward so rows[n-1] still holds order-1 values.
    for (int n = table.n_max(); n >= order; --n) {
      auto& cur = rows[n];
      const auto& prev = rows[n - 1];
      for (std::size_t d = 0; d < prev.size(); ++d) {
        if (__builtin_sub_overflow(cur[d], prev[d], &cur[d])) {
          throw NumericalFailure("difference coefficient overflows int64");
        }
      }
    }
    rows[order - 1].clear();
  }
  return rows;
}

}  // namespace

double difference(int m, int n, const ScaledPmfTable& table) {
  check_order(m, n);
  if (n > table.n_max()) {
    throw std::invalid_argument("pmf table too short for Delta_m(n)");
  }
  double sum = 0.0;
  double binom = 1.0;  // C(m, j)
  for (int j = 0; j <= m; ++j) {
    const double term = binom * table[n - j];
    sum += (j % 2 == 0) ? term : -term;
    binom = binom * (m - j) / (j + 1);
  }
  return sum;
}

DifferenceTable difference_table(const ScaledPmfTable& table, int m) {
  if (m < 0) throw std::invalid_argument("order m must be >= 0");
  if (table.n_max() < m) throw std::invalid_argument("pmf table too short");
  DifferenceTable out{table.params, m, m, {}};
  out.values.reserve(static_cast<std::size_t>(table.n_max() - m) + 1);
  for (int n = m; n <= table.n_max(); ++n) out.values.push_back(difference(m, n, table));
  return out;
}

std::vector<std::int64_t> difference_coefficients(int k, int m, int n) {
  check_order(m, n);
  const CompositionTable counts(k, n);
  return difference_rows(counts, m)[n];
}

double difference_exact(const Params& params, int m, int n) {
  return evaluate_factorial_series(difference_coefficients(params.k(), m, n),
                                   params.lambda());
}

double difference_closed_form(const Params& params, int m, int n) {
  const int k = params.k();
  if (m < 1 || m > k - 1 || n < m + 1 || n > k) {
    throw std::invalid_argument(
        "closed form needs 1 <= m <= k-1 and m+1 <= n <= k (m=" + std::to_string(m) +
        ", n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  const double lambda = params.lambda();
  // lambda^(m+1) / (m+1)!
  double power = 1.0;
  for (int j = 1; j <= m + 1; ++j) power *= lambda / j;
  const int top = n - m - 1;
  double binom = 1.0;  // C(top, j - m - 1)
  double sum = 0.0;
  for (int j = m + 1; j <= n; ++j) {
    sum += binom * power;
    const int i = j - m - 1;
    binom = binom * (top - i) / (i + 1);
    power *= lambda / (j + 1);
  }
  return sum;
}

AbsoluteMonotonicityReport absolute_monotonicity_report(const Params& params) {
  const int k = params.k();
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  const CompositionTable counts(k, k);
  AbsoluteMonotonicityReport report{params, {}, 0.0, true};
  for (int m = 1; m <= k - 1; ++m) {
    const auto rows = difference_rows(counts, m);
    for (int n = m + 1; n <= k; ++n) {
      MonotonicityCell cell;
      cell.m = m;
      cell.n = n;
      cell.delta_recursive = evaluate_factorial_series(rows[n], params.lambda());
      cell.delta_closed = difference_closed_form(params, m, n);
      cell.rel_err = std::abs(cell.delta_recursive - cell.delta_closed) /
                     std::abs(cell.delta_closed);
      if (!(cell.delta_recursive > 0.0) || !(cell.delta_closed > 0.0)) {
        report.all_positive = false;
      }
      // NaN from a vanishing closed form counts as the worst discrepancy.
      if (std::isnan(cell.rel_err) || cell.rel_err > report.max_rel_discrepancy) {
        report.max_rel_discrepancy =
            std::isnan(cell.rel_err) ? INFINITY : cell.rel_err;
      }
      report.cells.push_back(cell);
    }
  }
  return report;
}

}  // namespace pok
