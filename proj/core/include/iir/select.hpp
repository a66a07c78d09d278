#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iir/sample.hpp"

namespace iir {

enum class StopKind { none, penalized, holdout };
enum class Penalty { aic, bic, gcv };

/// Stopping rule for the iteration count k.
struct StopRule {
  StopKind kind = StopKind::none;
  Penalty phi = Penalty::aic;
  double holdout_fraction = 0.25;
  /// Consecutive non-improving k before the scan stops; nullopt scans to
  /// k_max.
  std::optional<std::size_t> patience;
  std::uint64_t seed = 0;

  static StopRule none() { return {}; }
  static StopRule penalized(Penalty phi,
                            std::optional<std::size_t> patience = {});
  static StopRule holdout(double fraction = 0.25, std::uint64_t seed = 0,
                          std::optional<std::size_t> patience = 20);
};

struct CriterionValue {
  double value;
  bool perfect_fit;  // rss == 0: value is -inf, log undefined
};

/// log(rss/n) + phi(p) with phi_aic = 2p/n, phi_bic = p log(n)/n,
/// phi_gcv = -2 log(1 - p/n). Throws for p >= n under gcv.
CriterionValue criterion_value(double rss, std::size_t n, std::size_t p,
                               Penalty phi);

struct CriterionPoint {
  std::size_t k;
  double rss;
  std::size_t p;
  double value;
};

struct CriterionTrace {
  std::vector<CriterionPoint> points;
  std::size_t selected_k = 0;
};

/// Scans (k, rss, p) entries, computes the criterion and returns the trace
/// with selected_k the argmin (ties toward smaller k). The scan stops
/// early once the best value has not improved for `patience` consecutive
/// entries; a perfect fit (rss = 0) wins immediately.
CriterionTrace select_k_penalized(
    const std::vector<std::pair<std::size_t, std::pair<double, std::size_t>>>&
        entries,
    std::size_t n, Penalty phi, std::optional<std::size_t> patience = {});

struct HoldoutResult {
  std::size_t selected_k = 0;
  /// (k, validation MSE) per recorded iteration.
  std::vector<std::pair<std::size_t, double>> curve;
};

/// Deterministic seeded train/validation split, fit on the training part,
/// per-k validation MSE through step-function prediction. Requires at
/// least 2 points on each side of the split.
HoldoutResult select_k_holdout(const SortedSample& sample, double fraction,
                               std::size_t k_max, std::uint64_t seed,
                               std::optional<std::size_t> patience = {});

std::string to_string(StopKind kind);
std::string to_string(Penalty phi);
StopKind stop_kind_from_string(const std::string& s);
Penalty penalty_from_string(const std::string& s);

}  // namespace iir
