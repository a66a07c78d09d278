#include "iir/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "iir/engine.hpp"
#include "iir/step_function.hpp"

namespace iir {

namespace {

double tent(double x) { return 1.0 - std::abs(2.0 * x - 1.0); }

double steps_target(double x) {
  if (x < 0.25) return 0.0;
  if (x < 0.5) return 1.0;
  if (x < 0.75) return 0.3;
  return 1.2;
}

double steps_u(double x) {
  if (x < 0.25) return 0.0;
  if (x < 0.75) return 1.0;
  return 1.9;
}

double steps_b(double x) { return x < 0.5 ? 0.0 : -0.7; }

double logistic(double x) { return 1.0 / (1.0 + std::exp(-10.0 * (x - 0.5))); }

std::vector<TargetFunction> make_suite() {
  std::vector<TargetFunction> suite;

  TargetFunction sinetrend;
  sinetrend.name = "sinetrend";
  sinetrend.r = [](double x) {
    return x + 0.5 * std::sin(4.0 * std::numbers::pi * x);
  };
  suite.push_back(sinetrend);

  TargetFunction steps;
  steps.name = "steps";
  steps.r = steps_target;
  steps.u_part = steps_u;
  steps.b_part = steps_b;
  suite.push_back(steps);

  TargetFunction monotone;
  monotone.name = "monotone";
  monotone.r = logistic;
  monotone.monotone = true;
  monotone.u_part = logistic;
  monotone.b_part = [](double) { return 0.0; };
  suite.push_back(monotone);

  TargetFunction peak;
  peak.name = "peak";
  peak.r = tent;
  peak.u_part = [](double x) { return std::min(2.0 * x, 1.0); };
  peak.b_part = [](double x) { return std::min(0.0, 1.0 - 2.0 * x); };
  suite.push_back(peak);

  return suite;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

const std::vector<TargetFunction>& target_suite() {
  static const std::vector<TargetFunction> suite = make_suite();
  return suite;
}

const TargetFunction& target_by_name(const std::string& name) {
  for (const TargetFunction& t : target_suite())
    if (t.name == name) return t;
  throw std::invalid_argument("unknown target: " + name);
}

Noise Noise::uniform(double bound) { return {NoiseKind::uniform, 0.0, bound}; }

Noise Noise::gaussian(double sigma) {
  return {NoiseKind::truncated_gaussian, sigma, 3.0 * sigma};
}

Noise Noise::silent() { return {NoiseKind::uniform, 0.0, 0.0}; }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b) {
  return splitmix64(splitmix64(base ^ splitmix64(a + 1)) ^ splitmix64(b + 2));
}

SortedSample generate(const Scenario& scenario) {
  if (scenario.n == 0) throw std::invalid_argument("empty sample");
  if (!(scenario.noise.bound >= 0.0) || !std::isfinite(scenario.noise.bound))
    throw std::invalid_argument("noise must be bounded");
  const TargetFunction& target = target_by_name(scenario.target);

  std::mt19937_64 rng(scenario.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> xs(scenario.n), ys(scenario.n);
  for (std::size_t i = 0; i < scenario.n; ++i) {
    double x = unif(rng);
    if (scenario.design.kind == DesignKind::power)
      x = std::pow(x, 1.0 / scenario.design.alpha);
    double eps = 0.0;
    switch (scenario.noise.kind) {
      case NoiseKind::uniform:
        eps = scenario.noise.bound * (2.0 * unif(rng) - 1.0);
        break;
      case NoiseKind::truncated_gaussian:
        if (scenario.noise.bound > 0.0) {
          do {
            eps = scenario.noise.sigma * normal(rng);
          } while (std::abs(eps) > scenario.noise.bound);
        }
        break;
    }
    xs[i] = x;
    ys[i] = target.r(x) + eps;
  }
  return collapse_ties(std::move(xs), std::move(ys));
}

std::vector<double> population_iir(const TargetFunction& target,
                                   std::size_t grid_size, std::size_t k) {
  if (grid_size < 2) throw std::invalid_argument("grid too small");
  if (k == 0) throw std::invalid_argument("k must be at least 1");

  SortedSample grid;
  grid.xs.resize(grid_size);
  grid.ys.resize(grid_size);
  grid.ws.assign(grid_size, 1.0);
  for (std::size_t i = 0; i < grid_size; ++i) {
    grid.xs[i] =
        (static_cast<double>(i) + 0.5) / static_cast<double>(grid_size);
    grid.ys[i] = target.r(grid.xs[i]);
  }
  const StepFunction truth = extend(grid, grid.ys);

  std::vector<double> errors;
  errors.reserve(k);
  IirModel model = init(grid);
  for (std::size_t step = 0; step < k; ++step) {
    iir_step(model);
    errors.push_back(l2_distance(extend(grid, model.fitted), truth));
  }
  return errors;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty vector");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return (v.size() % 2 == 1) ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double interquartile_range(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("iqr of empty vector");
  std::sort(v.begin(), v.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
  };
  return quantile(0.75) - quantile(0.25);
}

ConsistencyReport run_consistency(const std::string& target,
                                  const std::vector<std::size_t>& n_grid,
                                  const Noise& noise, const StopRule& rule,
                                  std::size_t k_max, std::size_t replicates,
                                  std::uint64_t base_seed) {
  if (n_grid.empty()) throw std::invalid_argument("empty n grid");
  if (replicates == 0) throw std::invalid_argument("no replicates");
  const TargetFunction& tf = target_by_name(target);

  ConsistencyReport report;
  report.target = target;
  report.n_grid = n_grid;
  report.replicates = replicates;
  report.base_seed = base_seed;

  for (std::size_t n : n_grid) {
    std::vector<double> errors;
    for (std::size_t rep = 0; rep < replicates; ++rep) {
      const std::uint64_t seed = derive_seed(base_seed, n, rep);
      Scenario scenario{target, n, noise, {}, seed};
      const SortedSample sample = generate(scenario);

      StopRule local = rule;
      local.seed = derive_seed(seed, 17, 0);
      const IirModel model = fit(sample, local, k_max);

      const StepFunction prediction = extend(model.sample, model.fitted);
      const double err = l2_distance_grid(tf.r, prediction, 2000);
      errors.push_back(err);
      report.rows.push_back({n, rep, seed, err, model.k,
                             prediction.jump_count()});
    }
    report.median_error.push_back(median(errors));
    report.iqr_error.push_back(interquartile_range(errors));
  }
  return report;
}

OverfitReport run_overfit_profile(const std::string& target, std::size_t n,
                                  const std::vector<std::size_t>& k_list,
                                  const Noise& noise, std::size_t seeds,
                                  std::uint64_t base_seed) {
  if (k_list.empty()) throw std::invalid_argument("empty k list");
  const TargetFunction& tf = target_by_name(target);
  std::vector<std::size_t> ks = k_list;
  std::sort(ks.begin(), ks.end());

  OverfitReport report;
  report.target = target;
  report.n = n;
  report.k_list = ks;

  std::vector<std::vector<double>> jumps_by_k(ks.size());
  std::vector<std::vector<double>> error_by_k(ks.size());

  for (std::size_t s = 0; s < seeds; ++s) {
    const std::uint64_t seed = derive_seed(base_seed, s, 1);
    Scenario scenario{target, n, noise, {}, seed};
    const SortedSample sample = generate(scenario);

    IirModel model = init(sample);
    std::size_t next = 0;
    bool converged = false;
    for (std::size_t k = 1; k <= ks.back() && next < ks.size(); ++k) {
      if (!converged) {
        iir_step(model);
        if (residual_sup_norm(model) == 0.0) converged = true;
      }
      if (k == ks[next]) {
        const StepFunction prediction = extend(sample, model.fitted);
        const double err = l2_distance_grid(tf.r, prediction, 1000);
        const IterationRecord& rec = model.trace.back();
        report.rows.push_back({seed, k, rec.rss, rec.jumps, err});
        jumps_by_k[next].push_back(static_cast<double>(rec.jumps));
        error_by_k[next].push_back(err);
        ++next;
      }
    }
  }

  for (std::size_t i = 0; i < ks.size(); ++i) {
    report.median_jumps.push_back(median(jumps_by_k[i]));
    report.median_error.push_back(median(error_by_k[i]));
  }
  return report;
}

}  // namespace iir
