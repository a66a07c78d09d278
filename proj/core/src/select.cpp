#include "iir/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "iir/engine.hpp"
#include "iir/step_function.hpp"

namespace iir {

StopRule StopRule::penalized(Penalty phi, std::optional<std::size_t> patience) {
  StopRule rule;
  rule.kind = StopKind::penalized;
  rule.phi = phi;
  rule.patience = patience;
  return rule;
}

StopRule StopRule::holdout(double fraction, std::uint64_t seed,
                           std::optional<std::size_t> patience) {
  StopRule rule;
  rule.kind = StopKind::holdout;
  rule.holdout_fraction = fraction;
  rule.seed = seed;
  rule.patience = patience;
  return rule;
}

CriterionValue criterion_value(double rss, std::size_t n, std::size_t p,
                               Penalty phi) {
  if (rss < 0.0) throw std::invalid_argument("negative rss");
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (rss == 0.0)
    return {-std::numeric_limits<double>::infinity(), true};

  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  double penalty = 0.0;
  switch (phi) {
    case Penalty::aic:
      penalty = 2.0 * pd / nd;
      break;
    case Penalty::bic:
      penalty = pd * std::log(nd) / nd;
      break;
    case Penalty::gcv:
      if (p >= n) throw std::invalid_argument("gcv requires p < n");
      penalty = -2.0 * std::log(1.0 - pd / nd);
      break;
  }
  return {std::log(rss / nd) + penalty, false};
}

CriterionTrace select_k_penalized(
    const std::vector<std::pair<std::size_t, std::pair<double, std::size_t>>>&
        entries,
    std::size_t n, Penalty phi, std::optional<std::size_t> patience) {
  if (entries.empty()) throw std::invalid_argument("empty trace");

  CriterionTrace trace;
  double best = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;
  for (const auto& [k, rec] : entries) {
    const auto [rss, p] = rec;
    const CriterionValue cv = criterion_value(rss, n, p, phi);
    trace.points.push_back({k, rss, p, cv.value});
    if (cv.value < best) {
      best = cv.value;
      trace.selected_k = k;
      since_best = 0;
    } else if (patience && ++since_best > *patience) {
      break;
    }
    if (cv.perfect_fit) break;
  }
  return trace;
}

HoldoutResult select_k_holdout(const SortedSample& sample, double fraction,
                               std::size_t k_max, std::uint64_t seed,
                               std::optional<std::size_t> patience) {
  sample.validate();
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("holdout fraction must lie in (0,1)");
  if (k_max == 0) throw std::invalid_argument("k_max must be at least 1");

  const std::size_t n = sample.size();
  const std::size_t n_val = static_cast<std::size_t>(
      std::lround(fraction * static_cast<double>(n)));
  if (n_val < 2 || n - n_val < 2)
    throw std::invalid_argument(
        "holdout split leaves fewer than 2 points on one side");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::size_t> val_idx(order.begin(),
                                   order.begin() + static_cast<long>(n_val));
  std::vector<std::size_t> train_idx(order.begin() + static_cast<long>(n_val),
                                     order.end());
  std::sort(train_idx.begin(), train_idx.end());

  SortedSample train;
  for (std::size_t i : train_idx) {
    train.xs.push_back(sample.xs[i]);
    train.ys.push_back(sample.ys[i]);
    train.ws.push_back(sample.ws[i]);
  }

  HoldoutResult result;
  double best = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;

  IirModel model = init(train);
  FitOptions options;
  std::size_t stalled_count = 0;
  std::vector<double> previous = model.fitted;
  while (model.k < k_max) {
    iir_step(model);

    const StepFunction prediction = extend(train, model.fitted);
    double sse = 0.0, wsum = 0.0;
    for (std::size_t i : val_idx) {
      const double r = sample.ys[i] - prediction(sample.xs[i]);
      sse += sample.ws[i] * r * r;
      wsum += sample.ws[i];
    }
    const double mse = sse / wsum;
    result.curve.push_back({model.k, mse});
    if (mse < best) {
      best = mse;
      result.selected_k = model.k;
      since_best = 0;
    } else if (patience && ++since_best > *patience) {
      break;
    }

    double change = 0.0;
    for (std::size_t i = 0; i < previous.size(); ++i)
      change = std::max(change, std::abs(model.fitted[i] - previous[i]));
    if (change < options.stall_tol) {
      if (++stalled_count >= options.stall_window) break;
    } else {
      stalled_count = 0;
    }
    previous = model.fitted;
    if (residual_sup_norm(model) == 0.0) break;
  }
  return result;
}

std::string to_string(StopKind kind) {
  switch (kind) {
    case StopKind::none: return "none";
    case StopKind::penalized: return "penalized";
    case StopKind::holdout: return "holdout";
  }
  return "unknown";
}

std::string to_string(Penalty phi) {
  switch (phi) {
    case Penalty::aic: return "aic";
    case Penalty::bic: return "bic";
    case Penalty::gcv: return "gcv";
  }
  return "unknown";
}

StopKind stop_kind_from_string(const std::string& s) {
  if (s == "none") return StopKind::none;
  if (s == "penalized") return StopKind::penalized;
  if (s == "holdout") return StopKind::holdout;
  throw std::invalid_argument("unknown stop kind: " + s);
}

Penalty penalty_from_string(const std::string& s) {
  if (s == "aic") return Penalty::aic;
  if (s == "bic") return Penalty::bic;
  if (s == "gcv") return Penalty::gcv;
  throw std::invalid_argument("unknown penalty: " + s);
}

}  // namespace iir
