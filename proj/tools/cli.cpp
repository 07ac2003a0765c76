#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pok/differences.hpp"
#include "pok/errors.hpp"
#include "pok/pmf.hpp"
#include "pok/roots.hpp"
#include "pok/structure.hpp"
#include "pok/sweep_fit.hpp"

namespace pok::cli {
namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  int k = 0;
  double lambda = 0.0;
  int n_max = -1;
  std::string method = "recurrence";
  std::uint64_t budget = kDefaultEnumerationBudget;
  int k_min = 2;
  int k_max = 10;
  double rel_tol = 1e-12;
  int cap = -1;
  int cap_mult = 6;
  double tie_tol = kDefaultTieRelTol;
  std::string format;
  std::string output_path;
  std::string out_dir;
  unsigned jobs = 0;
  bool thin = false;
  bool paper_scale = false;
};

double check_finite(double x) {
  if (!std::isfinite(x)) throw NumericalFailure("non-finite value in output");
  return x;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw UsageError(message);
}

void check_sweep_range(const Config& cfg, std::ostream& err) {
  require(cfg.k_min >= 2, "k-min must be >= 2");
  require(cfg.k_max >= cfg.k_min, "k-max must be >= k-min");
  if (cfg.k_max > kDeskScaleKMax) {
    require(cfg.paper_scale, fmt::format("k-max above {} needs --paper-scale", kDeskScaleKMax));
    err << "warning: sweeping up to k=" << cfg.k_max
        << "; cost grows like k_max^2 per root and may take hours\n";
  }
}

int cmd_pmf(const Config& cfg, std::ostream& out) {
  require(cfg.k >= 1, "k must be >= 1");
  require(cfg.lambda >= 0.0, "lambda must be >= 0");
  const Params params(cfg.k, cfg.lambda);
  const int n_max = cfg.n_max >= 0 ? cfg.n_max : std::max(30, 3 * cfg.k);

  auto brute = [&] {
    std::vector<double> v(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) v[n] = pmf_bruteforce(params, n, cfg.budget);
    return v;
  };

  if (cfg.method == "all") {
    const auto rec = pmf_recurrence_table(params, n_max).values;
    const auto km = tabulate(params, n_max, PmfMethod::km_sum).values;
    const auto bf = brute();
    out << "n,recurrence,km,brute,max_rel_err\n";
    for (int n = 0; n <= n_max; ++n) {
      const double vals[] = {rec[n], km[n], bf[n]};
      double worst = 0.0;
      for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
          const double scale = std::max(std::abs(vals[a]), std::abs(vals[b]));
          if (scale > 0.0) worst = std::max(worst, std::abs(vals[a] - vals[b]) / scale);
        }
      }
      fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{:.3e}\n", n, check_finite(rec[n]),
                 check_finite(km[n]), check_finite(bf[n]), check_finite(worst));
    }
    return kSuccess;
  }

  std::vector<double> values;
  if (cfg.method == "recurrence") {
    values = pmf_recurrence_table(params, n_max).values;
  } else if (cfg.method == "km") {
    values = tabulate(params, n_max, PmfMethod::km_sum).values;
  } else {
    values = brute();
  }
  out << "n," << cfg.method << '\n';
  for (int n = 0; n <= n_max; ++n) fmt::print(out, "{},{:.17g}\n", n, check_finite(values[n]));
  return kSuccess;
}

int cmd_diff(const Config& cfg, std::ostream& out) {
  require(cfg.k >= 2, "k must be >= 2");
  require(cfg.lambda > 0.0, "lambda must be > 0");
  const auto report = absolute_monotonicity_report(Params(cfg.k, cfg.lambda));
  out << "m,n,delta_recursive,delta_closed,rel_err\n";
  for (const auto& cell : report.cells) {
    fmt::print(out, "{},{},{:.17g},{:.17g},{:.3e}\n", cell.m, cell.n,
               check_finite(cell.delta_recursive), check_finite(cell.delta_closed),
               check_finite(cell.rel_err));
  }
  return report.all_positive ? kSuccess : kVerificationFailed;
}

std::string join_ints(const std::vector<int>& values) {
  if (values.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ';';
    s += std::to_string(values[i]);
  }
  return s;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  require(cfg.k >= 2, "k must be >= 2");
  require(cfg.lambda > 0.0, "lambda must be > 0");
  require(cfg.tie_tol >= 0.0, "tie-tol must be >= 0");
  const int cap = cfg.cap >= 0 ? cfg.cap : default_tail_cap(cfg.k);
  require(cap >= 2 * cfg.k, "cap must be >= 2k");
  const auto report = structure_report(Params(cfg.k, cfg.lambda), cap, cfg.tie_tol);
  const std::string violation =
      report.first_violation ? std::to_string(*report.first_violation) : "none";
  if (cfg.format == "csv") {
    out << "k,lambda,decreasing_block,concave_block,decreasing_tail_to,first_violation\n";
    fmt::print(out, "{},{:.15g},{},{},{},{}\n", cfg.k, cfg.lambda,
               report.decreasing_on_block ? 1 : 0, report.concave_on_block ? 1 : 0,
               report.decreasing_tail_to, violation);
  } else {
    fmt::print(out, "k={} lambda={:.15g} cap={}\n", cfg.k, cfg.lambda, cap);
    fmt::print(out, "decreasing_on_block={}\n", report.decreasing_on_block);
    fmt::print(out, "concave_on_block={}\n", report.concave_on_block);
    fmt::print(out, "decreasing_tail_to={}\n", report.decreasing_tail_to);
    fmt::print(out, "first_violation={}\n", violation);
    fmt::print(out, "marginal={}\n", join_ints(report.marginal));
    fmt::print(out, "closest_pair={} rel_gap={:.3e}\n", report.closest_pair,
               report.closest_rel_gap);
    fmt::print(out, "status={}\n", report.decreasing_to_cap() ? "decreasing" : "not_decreasing");
  }
  return report.decreasing_to_cap() ? kSuccess : kVerificationFailed;
}

int cmd_thresholds(const Config& cfg, std::ostream& out, std::ostream& err) {
  check_sweep_range(cfg, err);
  require(cfg.rel_tol > 0.0, "tol must be > 0");
  const auto rows = sweep(cfg.k_min, cfg.k_max, cfg.rel_tol, cfg.jobs);
  if (cfg.format == "full") {
    write_thresholds_csv(out, rows);
  } else {
    write_table1_csv(out, rows);
  }
  return kSuccess;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string());
  file << text;
}

int cmd_fit(const Config& cfg, std::ostream& out, std::ostream& err) {
  check_sweep_range(cfg, err);
  require(cfg.rel_tol > 0.0, "tol must be > 0");
  const auto ks = cfg.thin ? thinned_k_values(cfg.k_min, cfg.k_max)
                           : thinned_k_values(cfg.k_min, cfg.k_max, cfg.k_max);
  const auto rows = sweep(ks, cfg.rel_tol, cfg.jobs);
  const auto points = fit_points(rows);
  const auto fit = fit_inverse_root(points);

  std::ostringstream json;
  write_fit_json(json, fit);
  out << json.str();
  if (!cfg.out_dir.empty()) {
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream fig4;
    std::ostringstream fig5;
    write_fig4_csv(fig4, points, fit);
    write_fig5_csv(fig5, points, fit);
    write_file(dir / "fit.json", json.str());
    write_file(dir / "fig4.csv", fig4.str());
    write_file(dir / "fig5.csv", fig5.str());
  }
  return kSuccess;
}

int cmd_conjecture_scan(const Config& cfg, std::ostream& out, std::ostream& err) {
  check_sweep_range(cfg, err);
  require(cfg.cap_mult >= 4, "cap-mult must be >= 4");
  const auto rows = conjecture_51_scan(cfg.k_min, cfg.k_max, cfg.cap_mult, cfg.jobs);
  write_conjecture_scan_csv(out, rows);
  const bool all_pass =
      std::all_of(rows.begin(), rows.end(), [](const auto& row) { return row.pass(); });
  return all_pass ? kSuccess : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Poisson distribution of order k: scaled pmf, differences, thresholds"};
  app.require_subcommand(1);

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.output_path, "Write output to this file");
  };
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "Order k")->required();
    sub->add_option("--lambda", cfg.lambda, "Rate lambda")->required();
  };
  auto add_range = [&](CLI::App* sub) {
    sub->add_option("--k-min", cfg.k_min, "Smallest k")->capture_default_str();
    sub->add_option("--k-max", cfg.k_max, "Largest k")->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "Worker threads (0: all processors)");
    sub->add_flag("--paper-scale", cfg.paper_scale, "Allow k-max above 2000");
  };

  auto* pmf = app.add_subcommand("pmf", "Tabulate the scaled pmf p_n");
  add_point(pmf);
  pmf->add_option("--n-max", cfg.n_max, "Largest n (default max(30, 3k))");
  pmf->add_option("--method", cfg.method, "Evaluator")
      ->check(CLI::IsMember({"recurrence", "km", "brute", "all"}));
  pmf->add_option("--budget", cfg.budget, "Brute-force tuple budget");
  add_output(pmf);

  auto* diff = app.add_subcommand("diff", "Check positivity of Delta_m(n) on [1, k]");
  add_point(diff);
  add_output(diff);

  auto* verify = app.add_subcommand("verify", "Check strict decrease of p_n for n >= k");
  add_point(verify);
  verify->add_option("--cap", cfg.cap, "Largest n checked (default max(6k, 200))");
  verify->add_option("--tie-tol", cfg.tie_tol, "Relative gap reported as a marginal tie");
  verify->add_option("--format", cfg.format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
  add_output(verify);

  auto* thresholds = app.add_subcommand("thresholds", "Solve lambda_{k+1,k+2} for a k range");
  add_range(thresholds);
  thresholds->add_option("--tol", cfg.rel_tol, "Relative root tolerance");
  thresholds->add_option("--format", cfg.format, "table1 or full")
      ->check(CLI::IsMember({"table1", "full"}));
  add_output(thresholds);

  auto* fit = app.add_subcommand("fit", "Fit a line to 1/lambda_{k+1,k+2} against k");
  add_range(fit);
  fit->add_option("--tol", cfg.rel_tol, "Relative root tolerance");
  fit->add_option("--out-dir", cfg.out_dir, "Directory for fit.json, fig4.csv, fig5.csv");
  fit->add_flag("--thin", cfg.thin, "Use log-spaced k above 200");
  add_output(fit);

  auto* scan = app.add_subcommand("conjecture-scan",
                                  "Check decrease below 9/(4k-1) and violation at 9.05/(4k-1)");
  add_range(scan);
  scan->add_option("--cap-mult", cfg.cap_mult, "Tail cap as a multiple of k");
  add_output(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  std::ostringstream buffer;
  int code = kSuccess;
  try {
    if (pmf->parsed()) {
      code = cmd_pmf(cfg, buffer);
    } else if (diff->parsed()) {
      code = cmd_diff(cfg, buffer);
    } else if (verify->parsed()) {
      code = cmd_verify(cfg, buffer);
    } else if (thresholds->parsed()) {
      code = cmd_thresholds(cfg, buffer, err);
    } else if (fit->parsed()) {
      code = cmd_fit(cfg, buffer, err);
    } else if (scan->parsed()) {
      code = cmd_conjecture_scan(cfg, buffer, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DegenerateFit& e) {
    err << "error: degenerate input: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }

  if (cfg.output_path.empty()) {
    out << buffer.str();
  } else {
    try {
      write_file(cfg.output_path, buffer.str());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kNumericalFailure;
    }
  }
  return code;
}

}  // namespace pok::cli
