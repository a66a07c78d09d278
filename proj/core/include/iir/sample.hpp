#pragma once

#include <cstddef>
#include <vector>

namespace iir {

/// Ordered regression input: strictly increasing abscissae with responses
/// and positive weights. Weights count collapsed duplicate observations.
struct SortedSample {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> ws;

  std::size_t size() const { return xs.size(); }

  /// Throws std::invalid_argument if any structural invariant is violated.
  void validate() const;
};

/// Sorts the observations by abscissa and merges exact duplicates.
/// The merged response is the group mean and the merged weight the group
/// size. Throws on empty input or length mismatch.
SortedSample collapse_ties(std::vector<double> xs, std::vector<double> ys);

/// Weighted mean of v under positive weights w.
double weighted_mean(const std::vector<double>& v, const std::vector<double>& w);

/// Weighted inner product (1/W) * sum w_i a_i b_i with W = sum w_i.
double weighted_dot(const std::vector<double>& a, const std::vector<double>& b,
                    const std::vector<double>& w);

/// Weighted empirical norm sqrt(weighted_dot(a, a, w)).
double weighted_norm(const std::vector<double>& a, const std::vector<double>& w);

}  // namespace iir
