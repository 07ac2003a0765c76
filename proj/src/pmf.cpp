#include "pok/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "pok/errors.hpp"

namespace pok {
namespace {

void require_nonnegative(int n) {
  if (n < 0) {
    throw std::invalid_argument("n must be >= 0, got " + std::to_string(n));
  }
}

// lambda^r / r!
double power_over_factorial(double lambda, int r) {
  double term = 1.0;
  for (int j = 1; j <= r; ++j) term *= lambda / j;
  return term;
}

class TupleEnumerator {
 public:
  TupleEnumerator(double lambda, std::uint64_t budget)
      : lambda_(lambda), budget_(budget) {}

  // Chooses the multiplicity of `part`, then recurses to smaller parts. The
  // multiplicity of part 1 is whatever remains.
  void visit(int part, int remaining, double weight) {
    if (part == 1) {
      if (++visited_ > budget_) {
        throw OracleTooLarge("brute-force enumeration exceeded " +
                             std::to_string(budget_) + " tuples");
      }
      sum_ += weight * power_over_factorial(lambda_, remaining);
      return;
    }
    double w = weight;
    for (int count = 0; count * part <= remaining; ++count) {
      if (count > 0) w *= lambda_ / count;
      visit(part - 1, remaining - count * part, w);
    }
  }

  double sum() const noexcept { return sum_; }

 private:
  double lambda_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
  double sum_ = 0.0;
};

__extension__ using Int128 = __int128;

std::optional<Int128> checked_binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return Int128{0};
  r = std::min(r, n - r);
  Int128 c = 1;
  for (int i = 1; i <= r; ++i) {
    // c * (n - r + i) is divisible by i at every step.
    if (__builtin_mul_overflow(c, static_cast<Int128>(n - r + i), &c)) return std::nullopt;
    c /= i;
  }
  return c;
}

// d! times the coefficient of lambda^d in the Kostadinova-Minkova sums:
//   C(n-1, d-1) - sum_{i=1..l} (-1)^(i-1) C(d, i) C(n - i k - 1, d - 1)
// Collecting by power first keeps the alternating cancellation exact. Returns
// nullopt when an intermediate does not fit in 128 bits.
std::optional<std::vector<Int128>> km_coefficients(int k, int n) {
  const int blocks = n / (k + 1);
  std::vector<Int128> coeffs(static_cast<std::size_t>(n) + 1, 0);
  for (int d = 1; d <= n; ++d) {
    auto head = checked_binomial(n - 1, d - 1);
    if (!head) return std::nullopt;
    Int128 c = *head;
    for (int i = 1; i <= blocks && i <= d; ++i) {
      const auto choose = checked_binomial(d, i);
      const auto inner = checked_binomial(n - i * k - 1, d - 1);
      if (!choose || !inner) return std::nullopt;
      Int128 term = 0;
      if (__builtin_mul_overflow(*choose, *inner, &term)) return std::nullopt;
      const bool ok = (i % 2 == 1) ? !__builtin_sub_overflow(c, term, &c)
                                   : !__builtin_add_overflow(c, term, &c);
      if (!ok) return std::nullopt;
    }
    if (c < 0) return std::nullopt;
    coeffs[d] = c;
  }
  return coeffs;
}

// Term-by-term evaluation in floating point; used only past the range of
// km_coefficients. Throws when the alternating correction cancels more than
// kMaxCancellation of the leading magnitude.
constexpr double kMaxCancellation = 1e4;

double km_sum_termwise(const Params& params, int n) {
  const int k = params.k();
  const double lambda = params.lambda();

  // sum_{j=1..n} C(n-1, j-1) lambda^j / j!
  double head = 0.0;
  double term = lambda;
  for (int j = 1; j <= n; ++j) {
    head += term;
    term *= (static_cast<double>(n - j) / j) * (lambda / (j + 1));
  }
  double scale = head;

  // sum_{i=1..l} (-1)^(i-1) lambda^i/i! sum_{j=0..M} C(M+i-1, j+i-1) lambda^j/j!
  // with M = n - i(k+1).
  const int blocks = n / (k + 1);
  double correction = 0.0;
  double outer = 1.0;  // lambda^i / i!
  for (int i = 1; i <= blocks; ++i) {
    outer *= lambda / i;
    const int rest = n - i * (k + 1);
    double inner_term = 1.0;  // C(rest + i - 1, i - 1)
    for (int t = 1; t <= i - 1; ++t) inner_term *= static_cast<double>(rest + t) / t;
    double inner = 0.0;
    for (int j = 0; j <= rest; ++j) {
      inner += inner_term;
      inner_term *= (static_cast<double>(rest - j) / (j + i)) * (lambda / (j + 1));
    }
    const double signed_outer = (i % 2 == 1) ? outer : -outer;
    correction += signed_outer * inner;
    scale = std::max(scale, outer * inner);
  }
  const double result = head - correction;
  if (!(result > 0.0) || scale / result > kMaxCancellation) {
    throw NumericalFailure("km sums cancel catastrophically at n=" + std::to_string(n) +
                           "; use the recurrence");
  }
  return result;
}

}  // namespace

std::string_view to_string(PmfMethod method) {
  switch (method) {
    case PmfMethod::recurrence: return "recurrence";
    case PmfMethod::km_sum: return "km";
    case PmfMethod::bruteforce: return "brute";
    case PmfMethod::k2_closed: return "k2";
  }
  return "unknown";
}

double pmf_bruteforce(const Params& params, int n, std::uint64_t budget) {
  require_nonnegative(n);
  TupleEnumerator enumerator(params.lambda(), budget);
  enumerator.visit(params.k(), n, 1.0);
  return enumerator.sum();
}

ScaledPmfTable pmf_recurrence_table(const Params& params, int n_max) {
  require_nonnegative(n_max);
  const int k = params.k();
  const double lambda = params.lambda();
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1, 0.0);
  p[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    double s = 0.0;
    const int jmax = std::min(k, n);
    for (int j = 1; j <= jmax; ++j) s += j * p[n - j];
    p[n] = lambda * s / n;
  }
  return {params, std::move(p), PmfMethod::recurrence};
}

double pmf_km_sum(const Params& params, int n) {
  require_nonnegative(n);
  if (n == 0) return 1.0;
  if (auto coeffs = km_coefficients(params.k(), n)) {
    double sum = 0.0;
    double power = 1.0;  // lambda^d / d!
    for (int d = 1; d <= n; ++d) {
      power *= params.lambda() / d;
      if ((*coeffs)[d] != 0) sum += static_cast<double>((*coeffs)[d]) * power;
    }
    return sum;
  }
  return km_sum_termwise(params, n);
}

double pmf_k2_closed(double lambda, int n) {
  require_nonnegative(n);
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("lambda must be finite and >= 0");
  }
  double sum = 0.0;
  for (int j = 0; 2 * j <= n; ++j) {
    sum += power_over_factorial(lambda, n - 2 * j) * power_over_factorial(lambda, j);
  }
  return sum;
}

ScaledPmfTable tabulate(const Params& params, int n_max, PmfMethod method) {
  require_nonnegative(n_max);
  if (method == PmfMethod::recurrence) return pmf_recurrence_table(params, n_max);
  if (method == PmfMethod::k2_closed && params.k() != 2) {
    throw std::invalid_argument("k2 closed form requires k == 2");
  }
  std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    switch (method) {
      case PmfMethod::km_sum: values[n] = pmf_km_sum(params, n); break;
      case PmfMethod::bruteforce: values[n] = pmf_bruteforce(params, n); break;
      case PmfMethod::k2_closed: values[n] = pmf_k2_closed(params.lambda(), n); break;
      case PmfMethod::recurrence: break;
    }
  }
  return {params, std::move(values), method};
}

NormalizationResult normalization_check(const Params& params, double tol, int cap) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (cap < 0) throw std::invalid_argument("cap must be >= 0");
  const int k = params.k();
  const double lambda = params.lambda();
  const double f0 = std::exp(-k * lambda);
  if (f0 == 0.0) {
    throw NumericalFailure("exp(-k*lambda) underflows; k*lambda too large");
  }

  // Unscaled pmf obeys the same recurrence with f_0 = exp(-k lambda).
  std::vector<double> f;
  f.reserve(256);
  f.push_back(f0);
  double sum = f0;
  double compensation = 0.0;
  double mean = 0.0;
  for (int n = 0;; ++n) {
    if (n > 0) {
      double s = 0.0;
      const int jmax = std::min(k, n);
      for (int j = 1; j <= jmax; ++j) s += j * f[n - j];
      const double fn = lambda * s / n;
      f.push_back(fn);
      // Neumaier summation
      const double t = sum + fn;
      compensation += std::abs(sum) >= std::abs(fn) ? (sum - t) + fn : (fn - t) + sum;
      sum = t;
      mean += n * fn;
    }
    const double defect = 1.0 - (sum + compensation);
    if (defect < tol) return {n, defect, mean};
    if (n >= cap) {
      throw NumericalFailure("normalization did not reach tol within N <= " +
                             std::to_string(cap));
    }
  }
}

}  // namespace pok
