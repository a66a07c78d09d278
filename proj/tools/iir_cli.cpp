// Command-line interface: fit / predict / experiment subcommands over the
// stable CSV and model-JSON formats.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iir/csv.hpp"
#include "iir/engine.hpp"
#include "iir/model_io.hpp"
#include "iir/sim.hpp"
#include "iir/step_function.hpp"
#include "iir/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoull(item));
  if (out.empty()) throw CLI::ValidationError("empty list: " + text);
  return out;
}

void write_svg(const std::string& path, const iir::SortedSample& sample,
               const iir::StepFunction& fitted) {
  const double width = 640, height = 420, pad = 40;
  double y_lo = sample.ys[0], y_hi = sample.ys[0];
  for (double y : sample.ys) {
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  for (double v : fitted.values()) {
    y_lo = std::min(y_lo, v);
    y_hi = std::max(y_hi, v);
  }
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  auto px = [&](double x) { return pad + x * (width - 2 * pad); };
  auto py = [&](double y) {
    return height - pad - (y - y_lo) / (y_hi - y_lo) * (height - 2 * pad);
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < sample.size(); ++i)
    out << "<circle cx=\"" << px(sample.xs[i]) << "\" cy=\""
        << py(sample.ys[i]) << "\" r=\"2.5\" fill=\"#777\"/>\n";
  out << "<path d=\"";
  const auto& bp = fitted.breakpoints();
  const auto& vals = fitted.values();
  out << "M " << px(0.0) << ' ' << py(vals[0]);
  for (std::size_t i = 1; i < vals.size(); ++i)
    out << " H " << px(bp[i]) << " V " << py(vals[i]);
  out << " H " << px(1.0);
  out << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.8\"/>\n"
      << "</svg>\n";
}

iir::StopRule make_stop_rule(const std::string& stop, double fraction,
                             std::optional<std::size_t> patience,
                             std::uint64_t seed) {
  if (stop == "none") return iir::StopRule::none();
  if (stop == "holdout")
    return iir::StopRule::holdout(fraction, seed,
                                  patience ? patience
                                           : std::optional<std::size_t>(20));
  // Without patience the criterion scan runs to k_max: the cycle interpolates,
  // so rss keeps shrinking while the jump count saturates.
  return iir::StopRule::penalized(iir::penalty_from_string(stop),
                                  patience ? patience
                                           : std::optional<std::size_t>(20));
}

int cmd_fit(const std::string& input, const std::string& stop,
            std::size_t k_max, double fraction,
            std::optional<std::size_t> patience, std::uint64_t seed,
            const std::string& out, const std::string& svg) {
  const iir::CsvTable table = iir::read_csv(input);
  std::vector<double> xs = table.column_values("x");
  std::vector<double> ys = table.column_values("y");
  if (xs.size() < 2) throw std::runtime_error("need at least 2 observations");

  const double x_lo = *std::min_element(xs.begin(), xs.end());
  const double x_hi = *std::max_element(xs.begin(), xs.end());
  iir::AffineMap rescale;
  if (x_lo < 0.0 || x_hi > 1.0) {
    if (x_hi == x_lo) throw std::runtime_error("all x values identical");
    rescale = {x_lo, x_hi - x_lo};
    for (double& x : xs) x = rescale.to_unit(x);
    std::cerr << "note: x rescaled from [" << x_lo << ", " << x_hi
              << "] to [0, 1]\n";
  }

  const iir::SortedSample sample = iir::collapse_ties(xs, ys);
  if (sample.size() < xs.size())
    std::cerr << "warning: merged " << xs.size() - sample.size()
              << " duplicate x rows\n";
  if (sample.size() < 2)
    throw std::runtime_error("need at least 2 distinct x values");

  const iir::StopRule rule = make_stop_rule(stop, fraction, patience, seed);
  const iir::IirModel model = iir::fit(sample, rule, k_max);
  const iir::ModelFile file = iir::to_model_file(model, rescale);
  iir::save_model(file, out);

  const iir::IterationRecord& last = model.trace.back();
  std::cout << "k: " << model.k << "\n"
            << "rss: " << iir::format_double(last.rss) << "\n"
            << "jumps: " << last.jumps << "\n"
            << "termination: " << iir::to_string(model.termination) << "\n";
  for (const iir::CriterionPoint& p : model.criterion.points)
    if (p.k == model.criterion.selected_k)
      std::cout << "criterion(" << stop << "): " << p.value << "\n";
  std::cout << "model: " << out << "\n";

  if (!svg.empty()) write_svg(svg, sample, *file.fitted);
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& input,
                const std::string& out) {
  const iir::ModelFile model = iir::load_model(model_path);
  const iir::CsvTable table = iir::read_csv(input);
  const std::vector<double> xs = table.column_values("x");

  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double t = model.rescale.to_unit(xs[i]);
    if (!(t >= 0.0 && t <= 1.0)) bad.push_back(i + 2);  // 1-based, post-header
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "x out of domain on CSV line(s):";
    for (std::size_t line : bad) msg << ' ' << line;
    throw std::runtime_error(msg.str());
  }

  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x, model.predict(x)});
  iir::write_csv(out, {"x", "y_hat"}, rows);
  std::cout << "predictions: " << out << " (" << rows.size() << " rows)\n";
  return 0;
}

int run_overfit(const std::string& target, std::size_t n,
                const std::string& k_csv, std::size_t seeds, double sigma,
                std::uint64_t seed, const fs::path& dir) {
  const auto ks = parse_size_list(k_csv);
  const iir::OverfitReport report = iir::run_overfit_profile(
      target, n, ks, iir::Noise::gaussian(sigma), seeds, seed);

  std::vector<std::vector<double>> rows;
  for (const iir::OverfitRow& r : report.rows)
    rows.push_back({static_cast<double>(r.seed), static_cast<double>(r.k),
                    r.rss, static_cast<double>(r.jumps), r.l2_error});
  iir::write_csv((dir / "overfit.csv").string(),
                 {"seed", "k", "rss", "jumps", "l2_error"}, rows);

  json summary;
  summary["target"] = target;
  summary["n"] = n;
  summary["k"] = report.k_list;
  summary["median_jumps"] = report.median_jumps;
  summary["median_l2_error"] = report.median_error;
  std::ofstream(dir / "overfit_summary.json") << summary.dump(2) << '\n';

  const std::size_t per_seed = report.k_list.size();
  for (std::size_t i = 0; i + per_seed <= report.rows.size(); i += per_seed)
    for (std::size_t j = 1; j < per_seed; ++j)
      if (report.rows[i + j].rss > report.rows[i + j - 1].rss + 1e-12) {
        std::cerr << "contract failed: rss-non-increasing\n";
        return 2;
      }
  for (std::size_t j = 1; j < report.median_jumps.size(); ++j)
    if (report.median_jumps[j] < report.median_jumps[j - 1]) {
      std::cerr << "contract failed: median-jumps-non-decreasing\n";
      return 2;
    }
  std::cout << "overfit profile written to " << dir << "\n";
  return 0;
}

int run_approximation(const std::string& target, std::size_t grid,
                      std::size_t k, const fs::path& dir) {
  const auto curve =
      iir::population_iir(iir::target_by_name(target), grid, k);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < curve.size(); ++i)
    rows.push_back({static_cast<double>(i + 1), curve[i]});
  iir::write_csv((dir / "approximation.csv").string(), {"k", "error"}, rows);

  json summary{{"target", target}, {"grid", grid}, {"k", k},
               {"error_first", curve.front()}, {"error_last", curve.back()}};
  std::ofstream(dir / "approximation_summary.json") << summary.dump(2) << '\n';

  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i] > curve[i - 1] + 1e-12) {
      std::cerr << "contract failed: error-curve-non-increasing\n";
      return 2;
    }
  std::cout << "approximation curve written to " << dir << "\n";
  return 0;
}

int run_consistency_cmd(const std::string& target, const std::string& n_csv,
                        std::size_t reps, double sigma, std::size_t k_max,
                        std::uint64_t seed, const fs::path& dir) {
  const auto ns = parse_size_list(n_csv);
  const iir::ConsistencyReport report = iir::run_consistency(
      target, ns, iir::Noise::gaussian(sigma),
      iir::StopRule::holdout(0.25, 0, 20), k_max, reps, seed);

  std::vector<std::vector<double>> rows;
  for (const iir::ReplicateRow& r : report.rows)
    rows.push_back({static_cast<double>(r.n), static_cast<double>(r.replicate),
                    static_cast<double>(r.seed), r.l2_error,
                    static_cast<double>(r.selected_k),
                    static_cast<double>(r.jumps)});
  iir::write_csv((dir / "consistency.csv").string(),
                 {"n", "replicate", "seed", "l2_error", "selected_k", "jumps"},
                 rows);

  json summary{{"target", target},
               {"n", ns},
               {"replicates", reps},
               {"median_l2_error", report.median_error},
               {"iqr_l2_error", report.iqr_error}};
  std::ofstream(dir / "consistency_summary.json") << summary.dump(2) << '\n';

  for (std::size_t i = 1; i < report.median_error.size(); ++i)
    if (!(report.median_error[i] < report.median_error[i - 1])) {
      std::cerr << "contract failed: median-error-decreasing-in-n\n";
      return 2;
    }
  std::cout << "consistency report written to " << dir << "\n";
  return 0;
}

int run_verify_lemma(std::size_t n, std::size_t N, double C,
                     std::size_t trials, std::uint64_t seed,
                     const fs::path& dir) {
  const iir::LemmaAuditResult r = iir::lemma_bound_audit(C, n, N, trials, seed);

  const fs::path csv = dir / "verification.csv";
  const bool fresh = !fs::exists(csv);
  std::ofstream out(csv, std::ios::app);
  if (fresh) out << "n,N,C,trials,delta,max_ratio\n";
  out << n << ',' << N << ',' << iir::format_double(C) << ',' << trials << ','
      << iir::format_double(r.delta) << ','
      << iir::format_double(r.max_ratio) << '\n';

  std::cout << "delta: " << r.delta << "\nmax ratio: " << r.max_ratio << "\n";
  if (r.max_ratio > 1.0) {
    std::cerr << "contract failed: lemma-bound\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative isotonic regression: fit, predict, experiments"};
  app.require_subcommand(1);

  // fit
  std::string fit_input, fit_stop = "holdout", fit_out = "model.json",
              fit_svg;
  std::size_t fit_k_max = 1000;
  double fit_fraction = 0.25;
  std::optional<std::size_t> fit_patience;
  std::uint64_t fit_seed = 0;
  CLI::App* fit = app.add_subcommand("fit", "Fit a model to a CSV of (x, y)");
  fit->add_option("input", fit_input, "input CSV with columns x,y")->required();
  fit->add_option("--stop", fit_stop, "stopping rule")
      ->check(CLI::IsMember({"none", "aic", "bic", "gcv", "holdout"}));
  fit->add_option("--k-max", fit_k_max, "iteration cap");
  fit->add_option("--holdout-fraction", fit_fraction, "validation fraction");
  fit->add_option("--patience", fit_patience,
                  "non-improving iterations before the scan stops");
  fit->add_option("--seed", fit_seed, "seed for the holdout split");
  fit->add_option("--out", fit_out, "output model JSON");
  fit->add_option("--svg", fit_svg, "optional step-plot SVG path");

  // predict
  std::string pr_model, pr_input, pr_out = "predictions.csv";
  CLI::App* predict =
      app.add_subcommand("predict", "Predict at a CSV of x locations");
  predict->add_option("model", pr_model, "model JSON")->required();
  predict->add_option("input", pr_input, "input CSV with column x")->required();
  predict->add_option("--out", pr_out, "output CSV");

  // experiment
  CLI::App* experiment =
      app.add_subcommand("experiment", "Monte Carlo experiments and audits");
  experiment->require_subcommand(1);
  std::string ex_out = "experiment-out";
  std::string ex_target = "sinetrend";
  std::uint64_t ex_seed = 2024;

  CLI::App* overfit = experiment->add_subcommand(
      "overfit", "RSS/jumps/error profile across iteration counts");
  std::size_t ov_n = 100, ov_seeds = 50;
  std::string ov_k = "1,10,1000";
  double ov_sigma = 0.25;
  overfit->add_option("--target", ex_target);
  overfit->add_option("--n", ov_n);
  overfit->add_option("--k", ov_k, "comma-separated iteration counts");
  overfit->add_option("--seeds", ov_seeds);
  overfit->add_option("--sigma", ov_sigma);
  overfit->add_option("--seed", ex_seed);
  overfit->add_option("--out", ex_out);

  CLI::App* approx = experiment->add_subcommand(
      "approximation", "Noiseless dense-grid error decay");
  std::size_t ap_grid = 2000, ap_k = 200;
  approx->add_option("--target", ex_target);
  approx->add_option("--grid", ap_grid);
  approx->add_option("--k", ap_k);
  approx->add_option("--out", ex_out);

  CLI::App* consistency = experiment->add_subcommand(
      "consistency", "Error trend across sample sizes");
  std::string co_n = "50,200,800";
  std::size_t co_reps = 50, co_k_max = 200;
  double co_sigma = 0.25;
  consistency->add_option("--target", ex_target);
  consistency->add_option("--n", co_n, "comma-separated sample sizes");
  consistency->add_option("--reps", co_reps);
  consistency->add_option("--sigma", co_sigma);
  consistency->add_option("--k-max", co_k_max);
  consistency->add_option("--seed", ex_seed);
  consistency->add_option("--out", ex_out);

  CLI::App* lemma = experiment->add_subcommand(
      "verify-lemma", "Step-subspace approximation bound audit");
  std::size_t le_n = 200, le_N = 10, le_trials = 1000;
  double le_C = 1.0;
  lemma->add_option("--n", le_n);
  lemma->add_option("--N", le_N);
  lemma->add_option("--C", le_C);
  lemma->add_option("--trials", le_trials);
  lemma->add_option("--seed", ex_seed);
  lemma->add_option("--out", ex_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit)
      return cmd_fit(fit_input, fit_stop, fit_k_max, fit_fraction,
                     fit_patience, fit_seed, fit_out, fit_svg);
    if (*predict) return cmd_predict(pr_model, pr_input, pr_out);
    if (*experiment) {
      fs::create_directories(ex_out);
      if (*overfit)
        return run_overfit(ex_target, ov_n, ov_k, ov_seeds, ov_sigma, ex_seed,
                           ex_out);
      if (*approx) return run_approximation(ex_target, ap_grid, ap_k, ex_out);
      if (*consistency)
        return run_consistency_cmd(ex_target, co_n, co_reps, co_sigma,
                                   co_k_max, ex_seed, ex_out);
      if (*lemma)
        return run_verify_lemma(le_n, le_N, le_C, le_trials, ex_seed, ex_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
