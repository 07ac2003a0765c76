#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "pok/errors.hpp"
#include "pok/pmf.hpp"

using namespace pok;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

double fact(int n) { return std::tgamma(n + 1.0); }

// Hand expansions of p_1..p_8 for k = 2 (worked cases, not derived from any
// evaluator under test).
double k2_expansion(int n, double l) {
  switch (n) {
    case 1: return l;
    case 2: return l * l / 2 + l;
    case 3: return std::pow(l, 3) / 6 + l * l;
    case 4: return std::pow(l, 4) / 24 + std::pow(l, 3) / 2 + l * l / 2;
    case 5: return std::pow(l, 5) / 120 + std::pow(l, 4) / 6 + std::pow(l, 3) / 2;
    case 6:
      return std::pow(l, 6) / 720 + std::pow(l, 5) / 24 + std::pow(l, 4) / 4 + std::pow(l, 3) / 6;
    case 7:
      return std::pow(l, 7) / 5040 + std::pow(l, 6) / 120 + std::pow(l, 5) / 12 +
             std::pow(l, 4) / 6;
    case 8:
      return std::pow(l, 8) / 40320 + std::pow(l, 7) / 720 + std::pow(l, 6) / 48 +
             std::pow(l, 5) / 12 + std::pow(l, 4) / 24;
  }
  return NAN;
}

}  // namespace

TEST(Params, Validation) {
  EXPECT_THROW(Params(0, 1.0), std::invalid_argument);
  EXPECT_THROW(Params(2, -0.1), std::invalid_argument);
  EXPECT_THROW(Params(2, NAN), std::invalid_argument);
  EXPECT_NO_THROW(Params(2, 0.0));
  EXPECT_DOUBLE_EQ(Params(4, 1.0).kappa(), 10.0);
}

TEST(PmfBruteforce, Examples) {
  EXPECT_DOUBLE_EQ(pmf_bruteforce(Params(2, 0.37), 0), 1.0);
  EXPECT_NEAR(pmf_bruteforce(Params(1, 0.5), 3), 0.125 / 6.0, 1e-16);
  EXPECT_NEAR(pmf_bruteforce(Params(2, 1.0), 2), 1.5, 1e-15);
  EXPECT_NEAR(pmf_bruteforce(Params(3, 1.0), 4), 1.0 / 24 + 0.5 + 1.5, 1e-14);
}

TEST(PmfBruteforce, Errors) {
  EXPECT_THROW(pmf_bruteforce(Params(2, 1.0), -1), std::invalid_argument);
  EXPECT_THROW(pmf_bruteforce(Params(8, 1.0), 40, 1000), OracleTooLarge);
  EXPECT_NO_THROW(pmf_bruteforce(Params(3, 1.0), 6, 1000));
}

TEST(PmfRecurrence, Examples) {
  const auto t = pmf_recurrence_table(Params(2, 1.0), 1);
  ASSERT_EQ(t.values.size(), 2u);
  EXPECT_EQ(t[0], 1.0);
  EXPECT_EQ(t[1], 1.0);
  EXPECT_EQ(pmf_recurrence_table(Params(3, 0.5), 0).values, std::vector<double>{1.0});

  const auto four = pmf_recurrence_table(Params(2, 1.0), 4);
  const double expected[] = {1.0, 1.0, 1.5, 7.0 / 6.0, 25.0 / 24.0};
  for (int n = 0; n <= 4; ++n) EXPECT_NEAR(four[n], expected[n], 1e-15) << n;
  EXPECT_EQ(four.method, PmfMethod::recurrence);
  EXPECT_THROW(pmf_recurrence_table(Params(2, 1.0), -1), std::invalid_argument);
}

TEST(PmfRecurrence, LambdaZeroIsDegenerate) {
  const auto t = tabulate(Params(3, 0.0), 10);
  EXPECT_EQ(t[0], 1.0);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(t[n], 0.0);
}

TEST(PmfKmSum, Examples) {
  EXPECT_NEAR(pmf_km_sum(Params(2, 1.0), 3), 7.0 / 6.0, 1e-15);
  // 1/3! + 1/(2!2!) + 1/(4!1!) + 1/6!
  EXPECT_NEAR(pmf_km_sum(Params(2, 1.0), 6), 331.0 / 720.0, 1e-15);
  const Params p(5, 0.3);
  EXPECT_NEAR(pmf_km_sum(p, 17), pmf_recurrence_table(p, 17)[17], 1e-15);
  EXPECT_THROW(pmf_km_sum(p, -2), std::invalid_argument);
}

TEST(PmfKmSum, LargeIndex) {
  // Exact per-power coefficients where they fit, otherwise a guarded
  // floating evaluation that either agrees or refuses.
  for (int k : {3, 7, 40}) {
    for (double lambda : {0.2, 1.5}) {
      const Params p(k, lambda);
      const auto rec = pmf_recurrence_table(p, 220);
      for (int n : {60, 100, 150, 220}) {
        try {
          EXPECT_LT(std::abs(pmf_km_sum(p, n) - rec[n]) / rec[n], 1e-9) << k << ' ' << n;
        } catch (const NumericalFailure&) {
          EXPECT_GT(n, 60) << k;
        }
      }
    }
  }
}

TEST(PmfK2Closed, Examples) {
  EXPECT_NEAR(pmf_k2_closed(1.0, 8), 1979.0 / 13440.0, 1e-15);
  EXPECT_DOUBLE_EQ(pmf_k2_closed(2.0, 1), 2.0);
  EXPECT_NEAR(pmf_k2_closed(0.7, 5), pmf_km_sum(Params(2, 0.7), 5), 1e-15);
  EXPECT_THROW(pmf_k2_closed(1.0, -1), std::invalid_argument);
  EXPECT_THROW(tabulate(Params(3, 1.0), 4, PmfMethod::k2_closed), std::invalid_argument);
}

TEST(PmfK2, WorkedCasesAllMethods) {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const Params p(2, lambda);
    const auto rec = pmf_recurrence_table(p, 8);
    for (int n = 1; n <= 8; ++n) {
      const double want = k2_expansion(n, lambda);
      EXPECT_NEAR(rec[n], want, 1e-13 * want) << n;
      EXPECT_NEAR(pmf_km_sum(p, n), want, 1e-13 * want) << n;
      EXPECT_NEAR(pmf_k2_closed(lambda, n), want, 1e-13 * want) << n;
      EXPECT_NEAR(pmf_bruteforce(p, n), want, 1e-13 * want) << n;
    }
  }
}

TEST(PmfProperties, CrossMethodEquivalence) {
  for (int k = 1; k <= 6; ++k) {
    for (double lambda : {0.1, 0.5, 1.0, 2.0}) {
      const Params p(k, lambda);
      const auto rec = pmf_recurrence_table(p, 20);
      for (int n = 0; n <= 20; ++n) {
        EXPECT_LT(rel_diff(rec[n], pmf_km_sum(p, n)), 1e-12) << k << ' ' << lambda << ' ' << n;
        EXPECT_LT(rel_diff(rec[n], pmf_bruteforce(p, n)), 1e-10) << k << ' ' << lambda << ' ' << n;
      }
    }
  }
}

TEST(PmfProperties, RandomizedCrossMethod) {
  std::mt19937 rng(20231018);
  std::uniform_int_distribution<int> order(1, 8);
  std::uniform_int_distribution<int> index(0, 24);
  std::uniform_real_distribution<double> log_rate(std::log(0.01), std::log(3.0));
  for (int trial = 0; trial < 300; ++trial) {
    const Params p(order(rng), std::exp(log_rate(rng)));
    const int n = index(rng);
    const double rec = pmf_recurrence_table(p, n)[n];
    EXPECT_LT(rel_diff(rec, pmf_km_sum(p, n)), 1e-11) << p.k() << ' ' << p.lambda() << ' ' << n;
    EXPECT_LT(rel_diff(rec, pmf_bruteforce(p, n)), 1e-10);
    EXPECT_GE(rec, 0.0);
  }
}

TEST(PmfProperties, K2ClosedMatchesKm) {
  for (double lambda : {0.1, 1.0, 2.0, 5.0}) {
    for (int n = 0; n <= 30; ++n) {
      const double km = pmf_km_sum(Params(2, lambda), n);
      EXPECT_LT(std::abs(pmf_k2_closed(lambda, n) - km) / km, 1e-12) << lambda << ' ' << n;
    }
  }
}

TEST(PmfProperties, OrderOneIsPoisson) {
  for (double lambda : {0.1, 0.5, 1.0, 2.0, 7.5}) {
    const auto t = pmf_recurrence_table(Params(1, lambda), 20);
    for (int n = 0; n <= 20; ++n) {
      const double want = std::pow(lambda, n) / fact(n);
      EXPECT_LT(std::abs(t[n] - want) / want, 1e-13) << lambda << ' ' << n;
    }
  }
}

TEST(PmfProperties, IncreasingOnFirstBlock) {
  for (int k = 2; k <= 40; k += 3) {
    for (double lambda : {0.01, 0.3, 1.0, 4.0}) {
      const auto t = pmf_recurrence_table(Params(k, lambda), k);
      EXPECT_DOUBLE_EQ(t[1], lambda);
      for (int n = 2; n <= k; ++n) EXPECT_GT(t[n], t[n - 1]) << k << ' ' << lambda << ' ' << n;
    }
  }
}

TEST(PmfProperties, LowestPowerScaling) {
  // For n in [(i-1)k+1, ik] the smallest power of lambda in p_n is lambda^i.
  const double lambda = 1e-6;
  for (int k = 1; k <= 5; ++k) {
    const auto full = pmf_recurrence_table(Params(k, lambda), 4 * k);
    const auto half = pmf_recurrence_table(Params(k, lambda / 2), 4 * k);
    for (int n = 1; n <= 4 * k; ++n) {
      const int i = (n + k - 1) / k;
      EXPECT_NEAR(full[n] / half[n], std::pow(2.0, i), 1e-4 * std::pow(2.0, i)) << k << ' ' << n;
    }
  }
}

TEST(Normalization, Examples) {
  const auto poisson = normalization_check(Params(1, 1.0), 1e-9);
  EXPECT_LT(poisson.defect, 1e-9);
  EXPECT_EQ(poisson.n, 11);

  // N values frozen from an independent 40-digit evaluation.
  const auto a = normalization_check(Params(2, 1.29), 1e-9);
  EXPECT_LT(a.defect, 1e-9);
  EXPECT_EQ(a.n, 28);
  const auto b = normalization_check(Params(10, 0.3), 1e-9);
  EXPECT_LT(b.defect, 1e-9);
  EXPECT_EQ(b.n, 119);
}

TEST(Normalization, MeanIdentity) {
  for (const auto& [k, lambda] : std::vector<std::pair<int, double>>{
           {2, 1.29}, {3, 0.82}, {10, 0.3}, {50, 0.05}}) {
    const Params p(k, lambda);
    const auto r = normalization_check(p, 1e-9);
    const double mean = p.kappa() * lambda;
    EXPECT_LT(std::abs(r.mean - mean) / mean, 1e-8) << k;
    // Deeper truncation tightens the identity.
    const auto deep = normalization_check(p, 1e-14);
    EXPECT_LT(std::abs(deep.mean - mean) / mean, 1e-12) << k;
  }
}

TEST(Normalization, MonotoneDefect) {
  const Params p(4, 0.7);
  double previous = 1.0;
  for (double tol : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    const auto r = normalization_check(p, tol);
    EXPECT_LT(r.defect, tol);
    EXPECT_LE(r.defect, previous);
    previous = r.defect;
  }
}

TEST(Normalization, Errors) {
  EXPECT_THROW(normalization_check(Params(2, 1.0), 0.0), std::invalid_argument);
  EXPECT_THROW(normalization_check(Params(2, 1.0), 1e-9, 5), NumericalFailure);
  EXPECT_THROW(normalization_check(Params(100, 10.0), 1e-9), NumericalFailure);
}
