#pragma once

#include <cstdint>
#include <vector>

namespace pok {

/// Exact integer coefficients of the scaled pmf as a polynomial in lambda:
///
///   p_n = sum_d count(n, d) * lambda^d / d!
///
/// where count(n, d) is the number of compositions of n into d parts, each
/// part in [1, k]. Rows cover n = 0..n_max. Construction throws
/// NumericalFailure if a count does not fit in int64.
class CompositionTable {
 public:
  CompositionTable(int k, int n_max);

  int k() const noexcept { return k_; }
  int n_max() const noexcept { return n_max_; }

  /// Coefficient vector for p_n, indexed by d = 0..n.
  const std::vector<std::int64_t>& row(int n) const;

 private:
  int k_;
  int n_max_;
  std::vector<std::vector<std::int64_t>> rows_;
};

/// Evaluates sum_d coeffs[d] lambda^d / d! with lambda^d / d! built by
/// running ratio updates.
double evaluate_factorial_series(const std::vector<std::int64_t>& coeffs,
                                 double lambda);

}  // namespace pok
