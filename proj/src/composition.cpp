#include "pok/composition.hpp"

#include <stdexcept>
#include <string>

#include "pok/errors.hpp"

namespace pok {

CompositionTable::CompositionTable(int k, int n_max) : k_(k), n_max_(n_max) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  rows_.resize(static_cast<std::size_t>(n_max) + 1);
  rows_[0] = {1};
  for (int n = 1; n <= n_max; ++n) {
    auto& row = rows_[n];
    row.assign(static_cast<std::size_t>(n) + 1, 0);
    // The last part has size j; the rest is a composition of n - j with one
    // fewer part.
    for (int j = 1; j <= k && j <= n; ++j) {
      const auto& prev = rows_[n - j];
      for (std::size_t d = 0; d < prev.size(); ++d) {
        if (__builtin_add_overflow(row[d + 1], prev[d], &row[d + 1])) {
          throw NumericalFailure("composition count overflows int64 at n=" +
                                 std::to_string(n));
        }
      }
    }
  }
}

const std::vector<std::int64_t>& CompositionTable::row(int n) const {
  if (n < 0 || n > n_max_) throw std::out_of_range("row index out of range");
  return rows_[static_cast<std::size_t>(n)];
}

double evaluate_factorial_series(const std::vector<std::int64_t>& coeffs,
                                 double lambda) {
  double sum = 0.0;
  double power = 1.0;  // lambda^d / d!
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    if (d > 0) power *= lambda / static_cast<double>(d);
    if (coeffs[d] != 0) sum += static_cast<double>(coeffs[d]) * power;
  }
  return sum;
}

}  // namespace pok
