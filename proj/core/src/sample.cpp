#include "iir/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iir {

void SortedSample::validate() const {
  if (xs.empty()) throw std::invalid_argument("empty sample");
  if (xs.size() != ys.size() || xs.size() != ws.size())
    throw std::invalid_argument("sample field lengths differ");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw std::invalid_argument("abscissae not strictly increasing");
  for (double w : ws)
    if (!(w > 0.0)) throw std::invalid_argument("non-positive weight");
}

SortedSample collapse_ties(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("xs and ys lengths differ");
  if (xs.empty()) throw std::invalid_argument("empty sample");

  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

  SortedSample out;
  std::size_t i = 0;
  while (i < order.size()) {
    const double x = xs[order[i]];
    double sum = 0.0;
    std::size_t count = 0;
    while (i < order.size() && xs[order[i]] == x) {
      sum += ys[order[i]];
      ++count;
      ++i;
    }
    out.xs.push_back(x);
    out.ys.push_back(sum / static_cast<double>(count));
    out.ws.push_back(static_cast<double>(count));
  }
  out.validate();
  return out;
}

double weighted_mean(const std::vector<double>& v, const std::vector<double>& w) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += w[i] * v[i];
    den += w[i];
  }
  return num / den;
}

double weighted_dot(const std::vector<double>& a, const std::vector<double>& b,
                    const std::vector<double>& w) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += w[i] * a[i] * b[i];
    den += w[i];
  }
  return num / den;
}

double weighted_norm(const std::vector<double>& a, const std::vector<double>& w) {
  return std::sqrt(weighted_dot(a, a, w));
}

}  // namespace iir
