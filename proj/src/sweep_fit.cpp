#include "pok/sweep_fit.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include "json.hpp"
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "parallel.hpp"
#include "pok/errors.hpp"
#include "pok/structure.hpp"

namespace pok {
namespace {

void require_k_range(int k_min, int k_max) {
  if (k_min < 2 || k_max < k_min) {
    throw std::invalid_argument("need 2 <= k_min <= k_max (got " + std::to_string(k_min) +
                                ", " + std::to_string(k_max) + ")");
  }
}

double finite(double x) {
  if (!std::isfinite(x)) throw NumericalFailure("non-finite value in output");
  return x;
}

void rethrow_first(const std::vector<std::exception_ptr>& errors,
                   const std::vector<int>& ks) {
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw SweepError(ks[i], e.what());
    }
  }
}

}  // namespace

unsigned default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

std::vector<ThresholdSet> sweep(std::span<const int> ks, double rel_tol, unsigned jobs) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  std::vector<int> order(ks.begin(), ks.end());
  std::vector<ThresholdSet> rows(order.size());
  const auto errors = detail::parallel_for(
      order.size(), jobs == 0 ? default_jobs() : jobs,
      [&](std::size_t i) { rows[i] = threshold_set(order[i], rel_tol); });
  rethrow_first(errors, order);
  return rows;
}

std::vector<ThresholdSet> sweep(int k_min, int k_max, double rel_tol, unsigned jobs) {
  require_k_range(k_min, k_max);
  std::vector<int> ks;
  ks.reserve(static_cast<std::size_t>(k_max - k_min) + 1);
  for (int k = k_min; k <= k_max; ++k) ks.push_back(k);
  return sweep(ks, rel_tol, jobs);
}

std::vector<int> thinned_k_values(int k_min, int k_max, int dense_until, int log_points) {
  require_k_range(k_min, k_max);
  if (log_points < 2) throw std::invalid_argument("log_points must be >= 2");
  std::vector<int> ks;
  const int dense_end = std::min(dense_until, k_max);
  for (int k = k_min; k <= dense_end; ++k) ks.push_back(k);
  const int start = std::max(dense_end, k_min);
  if (start < k_max) {
    const double span = std::log(static_cast<double>(k_max) / start);
    for (int i = 1; i < log_points; ++i) {
      ks.push_back(static_cast<int>(std::lround(start * std::exp(span * i / (log_points - 1)))));
    }
    ks.push_back(k_max);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

std::vector<FitPoint> fit_points(std::span<const ThresholdSet> rows) {
  std::vector<FitPoint> points;
  points.reserve(rows.size());
  for (const auto& row : rows) points.push_back({row.k, row.lambda_k1k2});
  return points;
}

FitResult fit_inverse_root(std::span<const FitPoint> data) {
  if (data.empty()) throw std::invalid_argument("fit needs data");
  const auto [lo, hi] = std::minmax_element(
      data.begin(), data.end(), [](const FitPoint& a, const FitPoint& b) { return a.k < b.k; });
  if (lo->k == hi->k) throw DegenerateFit("all data points share k=" + std::to_string(lo->k));
  if (data.size() < 3) throw std::invalid_argument("fit needs at least 3 points");
  for (const auto& point : data) {
    if (!(point.lambda_k1k2 > 0.0)) throw std::invalid_argument("lambda must be > 0");
  }

  const double count = static_cast<double>(data.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& point : data) {
    mean_x += point.k;
    mean_y += 1.0 / point.lambda_k1k2;
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& point : data) {
    const double dx = point.k - mean_x;
    sxx += dx * dx;
    sxy += dx * (1.0 / point.lambda_k1k2 - mean_y);
  }

  FitResult fit;
  fit.alpha = sxy / sxx;
  fit.beta = mean_y - fit.alpha * mean_x;
  fit.k_range = {lo->k, hi->k};
  fit.residuals.reserve(data.size());
  fit.max_residual = -INFINITY;
  fit.min_residual = INFINITY;
  for (const auto& point : data) {
    const double r = fit.predict(point.k) - 1.0 / point.lambda_k1k2;
    fit.residuals.push_back(r);
    fit.max_residual = std::max(fit.max_residual, r);
    fit.min_residual = std::min(fit.min_residual, r);
  }
  return fit;
}

std::vector<ConjectureScanRow> conjecture_51_scan(int k_min, int k_max, int cap_mult,
                                                  unsigned jobs) {
  require_k_range(k_min, k_max);
  if (cap_mult < 4) throw std::invalid_argument("cap_mult must be >= 4");
  std::vector<int> ks;
  for (int k = k_min; k <= k_max; ++k) ks.push_back(k);
  std::vector<ConjectureScanRow> rows(ks.size());
  const auto errors = detail::parallel_for(
      ks.size(), jobs == 0 ? default_jobs() : jobs, [&](std::size_t i) {
        const int k = ks[i];
        ConjectureScanRow row;
        row.k = k;
        row.cap = cap_mult * k;
        row.lambda_below = bound_sufficient(k) * (1.0 - 1e-9);
        row.lambda_above = 9.05 / (4.0 * k - 1.0);
        row.below_decreasing =
            structure_report(Params(k, row.lambda_below), row.cap).decreasing_to_cap();
        row.above_violates =
            !structure_report(Params(k, row.lambda_above), row.cap).decreasing_to_cap();
        rows[i] = row;
      });
  rethrow_first(errors, ks);
  return rows;
}

void write_table1_csv(std::ostream& out, std::span<const ThresholdSet> rows) {
  out << "k,lambda_k1k2,nine_over_4km1,difference\n";
  for (const auto& row : rows) {
    fmt::print(out, "{},{:.9f},{:.9f},{:.9f}\n", row.k, finite(row.lambda_k1k2),
               finite(row.bound_sufficient), finite(row.difference()));
  }
}

void write_thresholds_csv(std::ostream& out, std::span<const ThresholdSet> rows) {
  out << "k,r_k,t_k,lambda_k1k2,nine_over_4km1,four_over_kp1,difference\n";
  for (const auto& row : rows) {
    fmt::print(out, "{},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g}\n", row.k,
               finite(row.r_k), finite(row.t_k), finite(row.lambda_k1k2),
               finite(row.bound_sufficient), finite(row.bound_necessary),
               finite(row.difference()));
  }
}

void write_fig4_csv(std::ostream& out, std::span<const FitPoint> data, const FitResult& fit) {
  out << "k,inv_lambda,fit_value\n";
  for (const auto& point : data) {
    fmt::print(out, "{},{:.15g},{:.15g}\n", point.k, finite(1.0 / point.lambda_k1k2),
               finite(fit.predict(point.k)));
  }
}

void write_fig5_csv(std::ostream& out, std::span<const FitPoint> data, const FitResult& fit) {
  out << "k,fit_minus_inv_lambda\n";
  for (const auto& point : data) {
    fmt::print(out, "{},{:.15g}\n", point.k,
               finite(fit.predict(point.k) - 1.0 / point.lambda_k1k2));
  }
}

void write_fit_json(std::ostream& out, const FitResult& fit) {
  nlohmann::ordered_json j;
  j["alpha"] = finite(fit.alpha);
  j["beta"] = finite(fit.beta);
  j["max_residual"] = finite(fit.max_residual);
  j["min_residual"] = finite(fit.min_residual);
  j["k_range"] = {fit.k_range.first, fit.k_range.second};
  j["points"] = fit.residuals.size();
  out << j.dump(2) << '\n';
}

void write_conjecture_scan_csv(std::ostream& out, std::span<const ConjectureScanRow> rows) {
  out << "k,cap,lambda_below,below_decreasing,lambda_above,above_violates,pass\n";
  for (const auto& row : rows) {
    fmt::print(out, "{},{},{:.15g},{},{:.15g},{},{}\n", row.k, row.cap, row.lambda_below,
               row.below_decreasing ? 1 : 0, row.lambda_above, row.above_violates ? 1 : 0,
               row.pass() ? 1 : 0);
  }
}

}  // namespace pok
