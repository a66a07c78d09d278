#include "iir/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iir {

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size())
    throw std::invalid_argument("breakpoints and values lengths differ");
  if (breakpoints_.empty()) throw std::invalid_argument("empty step function");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw std::invalid_argument("breakpoints not strictly increasing");
  if (breakpoints_.front() < 0.0 || breakpoints_.back() > 1.0)
    throw std::invalid_argument("breakpoints outside [0,1]");
}

double StepFunction::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("out of domain");
  // The first piece absorbs [0, b_2), so b_1 itself is not a cut point.
  auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end(), x);
  const auto idx = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return values_[idx];
}

std::vector<double> StepFunction::evaluate_batch(
    const std::vector<double>& xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back((*this)(x));
  return out;
}

std::size_t StepFunction::jump_count(double tol) const {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    if (std::abs(values_[i + 1] - values_[i]) > tol) ++count;
  return count;
}

double StepFunction::total_variation() const {
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    tv += std::abs(values_[i + 1] - values_[i]);
  return tv;
}

StepFunction extend(const SortedSample& sample,
                    const std::vector<double>& fitted) {
  sample.validate();
  if (sample.size() != fitted.size())
    throw std::invalid_argument("fitted vector length differs from sample");
  return StepFunction(sample.xs, fitted);
}

double l2_distance(const StepFunction& f, const StepFunction& g) {
  // Cut points where either function may change value. b_1 is not a cut
  // point (the first piece extends left to 0).
  std::vector<double> cuts;
  cuts.push_back(0.0);
  const auto& fb = f.breakpoints();
  const auto& gb = g.breakpoints();
  cuts.insert(cuts.end(), fb.begin() + 1, fb.end());
  cuts.insert(cuts.end(), gb.begin() + 1, gb.end());
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const double d = f(mid) - g(mid);
    acc += d * d * len;
  }
  return std::sqrt(acc);
}

double l2_distance_grid(const std::function<double(double)>& f,
                        const StepFunction& g, std::size_t m) {
  if (m == 0) throw std::invalid_argument("grid size must be positive");
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    const double d = f(x) - g(x);
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(m));
}

}  // namespace iir
