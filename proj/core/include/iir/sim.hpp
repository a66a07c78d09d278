#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "iir/sample.hpp"
#include "iir/select.hpp"

namespace iir {

/// Closed-form regression target on [0, 1], optionally with known
/// non-decreasing / non-increasing parts of its decomposition.
struct TargetFunction {
  std::string name;
  std::function<double(double)> r;
  bool monotone = false;
  std::optional<std::function<double(double)>> u_part;
  std::optional<std::function<double(double)>> b_part;
};

/// Bundled bounded-variation targets:
///   sinetrend  linear trend plus a sine oscillation
///   steps      piecewise constant with known decomposition
///   monotone   strictly increasing logistic curve
///   peak       tent function with known decomposition
const std::vector<TargetFunction>& target_suite();
const TargetFunction& target_by_name(const std::string& name);

enum class NoiseKind { uniform, truncated_gaussian };

/// Bounded centered noise. uniform: Uniform(-bound, bound).
/// truncated_gaussian: N(0, sigma^2) conditioned on |eps| <= bound.
struct Noise {
  NoiseKind kind = NoiseKind::truncated_gaussian;
  double sigma = 0.2;   // truncated_gaussian only
  double bound = 0.6;

  static Noise uniform(double bound);
  static Noise gaussian(double sigma);  // truncated at 3 sigma
  static Noise silent();                // bound 0: no noise
};

enum class DesignKind { uniform, power };

/// Law of the design points. power draws X = U^(1/alpha) (density
/// alpha x^{alpha-1}).
struct DesignLaw {
  DesignKind kind = DesignKind::uniform;
  double alpha = 1.0;
};

struct Scenario {
  std::string target;
  std::size_t n = 100;
  Noise noise;
  DesignLaw design;
  std::uint64_t seed = 0;
};

/// Draws n design points, sorts them and adds bounded noise to the target
/// values. Deterministic per seed. Throws for an unbounded noise config.
SortedSample generate(const Scenario& scenario);

/// Noiseless dense-grid emulation of the population-level cycle: runs the
/// algorithm on (grid, r(grid)) and returns the exact piecewise L2 error
/// to the target's step extension after each of k iterations.
std::vector<double> population_iir(const TargetFunction& target,
                                   std::size_t grid_size, std::size_t k);

struct ReplicateRow {
  std::size_t n;
  std::size_t replicate;
  std::uint64_t seed;
  double l2_error;       // quadrature vs the closed-form target
  std::size_t selected_k;
  std::size_t jumps;
};

struct ConsistencyReport {
  std::string target;
  std::vector<std::size_t> n_grid;
  std::size_t replicates;
  std::uint64_t base_seed;
  std::vector<ReplicateRow> rows;
  std::vector<double> median_error;  // one per n in n_grid
  std::vector<double> iqr_error;
};

/// Per (n, replicate): generate, fit with the rule, measure the L2 error
/// against the closed-form target by midpoint quadrature. Replicate seeds
/// derive deterministically from base_seed.
ConsistencyReport run_consistency(const std::string& target,
                                  const std::vector<std::size_t>& n_grid,
                                  const Noise& noise, const StopRule& rule,
                                  std::size_t k_max, std::size_t replicates,
                                  std::uint64_t base_seed);

struct OverfitRow {
  std::uint64_t seed;
  std::size_t k;
  double rss;
  std::size_t jumps;
  double l2_error;
};

struct OverfitReport {
  std::string target;
  std::size_t n;
  std::vector<std::size_t> k_list;
  std::vector<OverfitRow> rows;
  std::vector<double> median_jumps;  // one per k in k_list
  std::vector<double> median_error;
};

/// Fits one sample per seed at each k in k_list, recording RSS, jump count
/// and the true L2 error. RSS is non-increasing in k on every seed.
OverfitReport run_overfit_profile(const std::string& target, std::size_t n,
                                  const std::vector<std::size_t>& k_list,
                                  const Noise& noise, std::size_t seeds,
                                  std::uint64_t base_seed);

/// Deterministic per-replicate seed derivation (splitmix64 over the tuple).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

double median(std::vector<double> v);
double interquartile_range(std::vector<double> v);

}  // namespace iir
