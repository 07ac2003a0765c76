#pragma once

#include <optional>
#include <vector>

#include "pok/params.hpp"

namespace pok {

inline constexpr double kDefaultTieRelTol = 1e-13;

/// Shape of the scaled pmf beyond n = k.
struct StructureReport {
  Params params;
  int cap = 0;
  bool decreasing_on_block = false;  // p_n strictly decreasing on [k, 2k]
  bool concave_on_block = false;     // Delta_2(n) < 0 on [k+3, 2k]
  int decreasing_tail_to = 0;        // largest N <= cap, strict decrease on [k, N]
  std::optional<int> first_violation;  // first n >= k with p_{n+1} >= p_n
  std::vector<int> marginal;           // n with |p_{n+1} - p_n| < tol * p_n
  int closest_pair = 0;                // n minimising |p_{n+1} - p_n| / p_n
  double closest_rel_gap = 0.0;

  bool decreasing_to_cap() const noexcept { return !first_violation.has_value(); }
};

/// max(6k, 200).
int default_tail_cap(int k);

/// Delta_1(n) for n in [k+2, 2k] from the two-sum expansion
///   sum_{j=2..n} C(n-2, j-2) l^j/j! - l * sum_{j=1..n-k-1} C(n-k-2, j-1) l^j/j!
double block_difference_kp1_2k(const Params& params, int n);

/// Requires k >= 2 and cap >= 2k. Strict inequalities; near ties below
/// `tie_rel_tol` are also listed in `marginal`.
StructureReport structure_report(const Params& params, int cap,
                                 double tie_rel_tol = kDefaultTieRelTol);

}  // namespace pok
