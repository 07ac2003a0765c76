#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pok/params.hpp"

namespace pok {

// Scaled pmf p_n = h_k(n; lambda) = exp(k * lambda) * f_k(n; lambda).

enum class PmfMethod { recurrence, km_sum, bruteforce, k2_closed };

std::string_view to_string(PmfMethod method);

/// p_0 .. p_N for one (k, lambda), tagged with the evaluator that produced it.
struct ScaledPmfTable {
  Params params;
  std::vector<double> values;
  PmfMethod method = PmfMethod::recurrence;

  int n_max() const noexcept { return static_cast<int>(values.size()) - 1; }
  double operator[](int n) const { return values[static_cast<std::size_t>(n)]; }
  std::span<const double> view() const noexcept { return values; }
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Sum over every tuple (n_1..n_k) with n_1 + 2 n_2 + ... + k n_k = n of
/// lambda^(n_1+...+n_k) / (n_1! ... n_k!). Exponential cost; used as the
/// reference the faster evaluators are checked against.
///
/// Throws OracleTooLarge once more than `budget` tuples have been visited.
double pmf_bruteforce(const Params& params, int n,
                      std::uint64_t budget = kDefaultEnumerationBudget);

/// p_0 = 1, p_n = (lambda / n) * sum_{j=1..k} j p_{n-j}. O(k * n_max).
ScaledPmfTable pmf_recurrence_table(const Params& params, int n_max);

/// Kostadinova-Minkova combinatorial sums: a plain binomial sum for n <= k and
/// an alternating correction over the blocks of length k+1 beyond that. The
/// sums are collected per power of lambda in exact integer arithmetic while the
/// binomials fit in 128 bits (n up to roughly 120), otherwise evaluated term by
/// term in floating point.
double pmf_km_sum(const Params& params, int n);

/// k = 2 only: sum_{j=0..floor(n/2)} lambda^(n-j) / ((n-2j)! j!).
double pmf_k2_closed(double lambda, int n);

/// Table of p_0..p_{n_max} using any of the evaluators. k2_closed requires
/// k == 2.
ScaledPmfTable tabulate(const Params& params, int n_max,
                        PmfMethod method = PmfMethod::recurrence);

inline constexpr int kDefaultNormalizationCap = 100'000;

struct NormalizationResult {
  int n = 0;               // smallest N with 1 - sum_{n<=N} f_n < tol
  double defect = 0.0;     // 1 - sum_{n<=N} f_n
  double mean = 0.0;       // sum_{n<=N} n f_n
};

/// Accumulates the unscaled pmf f_n = exp(-k lambda) p_n until the missing
/// mass drops below `tol`. Throws NumericalFailure if `cap` is reached first.
NormalizationResult normalization_check(const Params& params, double tol,
                                        int cap = kDefaultNormalizationCap);

}  // namespace pok
