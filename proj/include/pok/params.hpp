#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pok {

/// Order k and rate lambda of a Poisson distribution of order k.
///
/// lambda == 0 is representable (the degenerate distribution concentrated at
/// n = 0); operations that need lambda > 0 check it themselves.
class Params {
 public:
  Params(int k, double lambda) : k_(k), lambda_(lambda) {
    if (k < 1) {
      throw std::invalid_argument("k must be >= 1, got " + std::to_string(k));
    }
    if (!std::isfinite(lambda) || lambda < 0.0) {
      throw std::invalid_argument("lambda must be finite and >= 0");
    }
  }

  int k() const noexcept { return k_; }
  double lambda() const noexcept { return lambda_; }

  /// k(k+1)/2; the mean of the distribution is kappa() * lambda().
  double kappa() const noexcept { return 0.5 * k_ * (k_ + 1.0); }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  int k_;
  double lambda_;
};

inline void require_positive_lambda(const Params& params) {
  if (!(params.lambda() > 0.0)) {
    throw std::invalid_argument("lambda must be > 0");
  }
}

}  // namespace pok
