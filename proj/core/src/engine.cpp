#include "iir/engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace iir {

namespace {

std::size_t fitted_jumps(const std::vector<double>& v) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (std::abs(v[i + 1] - v[i]) > kJumpTolerance) ++count;
  return count;
}

double sup_change(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Runs the plain cycle to k_max with the stall and interpolation guards.
// Calls observe(model) after every step; a false return stops the loop.
template <typename Observer>
void run_cycle(IirModel& model, std::size_t k_max, const FitOptions& options,
               Observer&& observe) {
  std::size_t stalled_count = 0;
  std::vector<double> previous = model.fitted;
  while (model.k < k_max) {
    iir_step(model);
    if (sup_change(model.fitted, previous) < options.stall_tol) {
      if (++stalled_count >= options.stall_window) {
        model.termination = Termination::stalled;
        return;
      }
    } else {
      stalled_count = 0;
    }
    previous = model.fitted;
    if (!observe(model)) return;
    if (residual_sup_norm(model) == 0.0) {
      model.termination = Termination::interpolated;
      return;
    }
  }
  model.termination = Termination::reached_k_max;
}

}  // namespace

IirModel init(SortedSample sample) {
  sample.validate();
  IirModel model;
  model.sample = std::move(sample);
  const std::size_t n = model.sample.size();
  model.u.values.assign(n, 0.0);
  model.u.direction = Direction::isotone;
  model.b.values.assign(n, 0.0);
  model.b.direction = Direction::antitone;
  model.fitted.assign(n, 0.0);
  return model;
}

void iir_step(IirModel& model) {
  const auto& ys = model.sample.ys;
  const auto& ws = model.sample.ws;
  const std::size_t n = ys.size();

  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) resid[i] = ys[i] - model.b.values[i];
  model.u = iso(resid, ws);
  for (std::size_t i = 0; i < n; ++i) resid[i] = ys[i] - model.u.values[i];
  model.b = anti(resid, ws);
  for (std::size_t i = 0; i < n; ++i)
    model.fitted[i] = model.u.values[i] + model.b.values[i];
  ++model.k;

  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - model.fitted[i];
    sse += ws[i] * r * r;
  }
  model.trace.push_back({model.k, sse, fitted_jumps(model.fitted),
                         weighted_mean(model.b.values, ws)});
}

double rss(const IirModel& model) {
  double sse = 0.0;
  for (std::size_t i = 0; i < model.sample.size(); ++i) {
    const double r = model.sample.ys[i] - model.fitted[i];
    sse += model.sample.ws[i] * r * r;
  }
  return sse;
}

double residual_sup_norm(const IirModel& model) {
  double m = 0.0;
  for (std::size_t i = 0; i < model.sample.size(); ++i)
    m = std::max(m, std::abs(model.fitted[i] - model.sample.ys[i]));
  return m;
}

DecompositionReport decomposition_report(const IirModel& model) {
  DecompositionReport report{};
  report.u_mean = weighted_mean(model.u.values, model.sample.ws);
  report.b_mean = weighted_mean(model.b.values, model.sample.ws);
  report.joint_jumps = 0;
  for (std::size_t i = 0; i + 1 < model.sample.size(); ++i) {
    const bool u_jump =
        std::abs(model.u.values[i + 1] - model.u.values[i]) > kJumpTolerance;
    const bool b_jump =
        std::abs(model.b.values[i + 1] - model.b.values[i]) > kJumpTolerance;
    if (u_jump && b_jump) ++report.joint_jumps;
  }
  return report;
}

IirModel fit(const SortedSample& sample, const StopRule& stop,
             std::size_t k_max, const FitOptions& options) {
  if (k_max == 0) throw std::invalid_argument("k_max must be at least 1");
  sample.validate();

  auto run_to = [&](std::size_t k_target) {
    IirModel model = init(sample);
    run_cycle(model, k_target, options, [](const IirModel&) { return true; });
    return model;
  };

  switch (stop.kind) {
    case StopKind::none: {
      IirModel model = run_to(k_max);
      model.stop = stop;
      return model;
    }
    case StopKind::penalized: {
      const std::size_t n = sample.size();
      std::vector<std::pair<std::size_t, std::pair<double, std::size_t>>>
          entries;
      IirModel scan = init(sample);
      double best = std::numeric_limits<double>::infinity();
      std::size_t since_best = 0;
      run_cycle(scan, k_max, options, [&](const IirModel& m) {
        const IterationRecord& rec = m.trace.back();
        entries.push_back({rec.k, {rec.rss, rec.jumps}});
        const CriterionValue cv =
            criterion_value(rec.rss, n, rec.jumps, stop.phi);
        if (cv.perfect_fit) return false;
        if (cv.value < best) {
          best = cv.value;
          since_best = 0;
        } else if (stop.patience && ++since_best > *stop.patience) {
          return false;
        }
        return true;
      });
      CriterionTrace trace =
          select_k_penalized(entries, n, stop.phi, stop.patience);
      IirModel model = run_to(trace.selected_k);
      model.termination = Termination::selected;
      model.criterion = std::move(trace);
      model.stop = stop;
      return model;
    }
    case StopKind::holdout: {
      HoldoutResult holdout = select_k_holdout(
          sample, stop.holdout_fraction, k_max, stop.seed, stop.patience);
      IirModel model = run_to(holdout.selected_k);
      model.termination = Termination::selected;
      model.validation_curve = std::move(holdout.curve);
      model.stop = stop;
      return model;
    }
  }
  throw std::logic_error("unknown stop kind");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::running: return "running";
    case Termination::reached_k_max: return "reached_k_max";
    case Termination::stalled: return "stalled";
    case Termination::interpolated: return "interpolated";
    case Termination::selected: return "selected";
  }
  return "unknown";
}

}  // namespace iir
