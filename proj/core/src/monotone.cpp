#include "iir/monotone.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "iir/sample.hpp"

namespace iir {

namespace {

void check_inputs(const std::vector<double>& ys, const std::vector<double>& ws) {
  if (ys.empty()) throw std::invalid_argument("empty sample");
  if (ys.size() != ws.size())
    throw std::invalid_argument("ys and ws lengths differ");
  for (double w : ws)
    if (!(w > 0.0)) throw std::invalid_argument("non-positive weight");
}

}  // namespace

MonotoneFit iso(const std::vector<double>& ys, const std::vector<double>& ws) {
  check_inputs(ys, ws);
  const std::size_t n = ys.size();

  // Stack of pooled blocks: (begin, weight, weighted mean).
  std::vector<std::size_t> begin;
  std::vector<double> weight;
  std::vector<double> mean;
  begin.reserve(n);
  weight.reserve(n);
  mean.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t b = i;
    double w = ws[i];
    double m = ys[i];
    // Pool while the previous block strictly violates monotonicity.
    while (!mean.empty() && mean.back() > m) {
      const double wp = weight.back();
      // Incremental weighted mean of the merged block.
      m = mean.back() + (w / (wp + w)) * (m - mean.back());
      w += wp;
      b = begin.back();
      begin.pop_back();
      weight.pop_back();
      mean.pop_back();
    }
    begin.push_back(b);
    weight.push_back(w);
    mean.push_back(m);
  }

  MonotoneFit fit;
  fit.direction = Direction::isotone;
  fit.values.resize(n);
  for (std::size_t k = 0; k < begin.size(); ++k) {
    const std::size_t end = (k + 1 < begin.size()) ? begin[k + 1] : n;
    fit.blocks.push_back({begin[k], end, mean[k]});
    for (std::size_t i = begin[k]; i < end; ++i) fit.values[i] = mean[k];
  }
  fit.jumps = fit.blocks.size() - 1;
  return fit;
}

MonotoneFit anti(const std::vector<double>& ys, const std::vector<double>& ws) {
  std::vector<double> neg(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) neg[i] = -ys[i];
  MonotoneFit fit = iso(neg, ws);
  fit.direction = Direction::antitone;
  for (double& v : fit.values) v = -v;
  for (Block& blk : fit.blocks) blk.level = -blk.level;
  return fit;
}

std::vector<double> iso_minmax_oracle(const std::vector<double>& ys,
                                      const std::vector<double>& ws) {
  check_inputs(ys, ws);
  const std::size_t n = ys.size();

  // Prefix sums for O(1) range means.
  std::vector<double> sw(n + 1, 0.0), swy(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sw[i + 1] = sw[i] + ws[i];
    swy[i + 1] = swy[i] + ws[i] * ys[i];
  }
  auto range_mean = [&](std::size_t l, std::size_t j) {
    return (swy[j + 1] - swy[l]) / (sw[j + 1] - sw[l]);
  };

  std::vector<double> maxmin(n), minmax(n);
  for (std::size_t i = 0; i < n; ++i) {
    double outer = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l <= i; ++l) {
      double inner = std::numeric_limits<double>::infinity();
      for (std::size_t j = i; j < n; ++j)
        inner = std::min(inner, range_mean(l, j));
      outer = std::max(outer, inner);
    }
    maxmin[i] = outer;

    double outer2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = i; j < n; ++j) {
      double inner = -std::numeric_limits<double>::infinity();
      for (std::size_t l = 0; l <= i; ++l)
        inner = std::max(inner, range_mean(l, j));
      outer2 = std::min(outer2, inner);
    }
    minmax[i] = outer2;

    if (std::abs(maxmin[i] - minmax[i]) > 1e-9)
      throw std::logic_error("max-min and min-max forms disagree");
  }
  return maxmin;
}

double projection_residual_check(const std::vector<double>& ys,
                                 const std::vector<double>& ws,
                                 const MonotoneFit& fit,
                                 const std::vector<std::vector<double>>& trials) {
  check_inputs(ys, ws);
  if (ys.size() != fit.values.size())
    throw std::invalid_argument("fit length differs from sample");

  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& u : trials) {
    if (u.size() != ys.size())
      throw std::invalid_argument("trial vector length differs from sample");
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const bool ok = (fit.direction == Direction::isotone) ? u[i] <= u[i + 1]
                                                            : u[i] >= u[i + 1];
      if (!ok) throw std::invalid_argument("trial vector outside the cone");
    }
    std::vector<double> resid(ys.size()), diff(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
      resid[i] = ys[i] - fit.values[i];
      diff[i] = u[i] - fit.values[i];
    }
    worst = std::max(worst, weighted_dot(resid, diff, ws));
  }
  return worst;
}

}  // namespace iir
