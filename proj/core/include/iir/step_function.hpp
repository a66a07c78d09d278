#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "iir/sample.hpp"

namespace iir {

/// Right-continuous piecewise-constant function on [0, 1].
///
/// Piece 1 covers [0, b_2); interior piece i covers [b_i, b_{i+1});
/// the last piece covers [b_n, 1]. With a single piece the function is
/// constant on [0, 1].
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  /// Value at x; throws std::domain_error for x outside [0, 1].
  double operator()(double x) const;

  std::vector<double> evaluate_batch(const std::vector<double>& xs) const;

  /// Number of adjacent piece pairs whose values differ by more than tol.
  std::size_t jump_count(double tol = 1e-9) const;

  double total_variation() const;

  std::size_t pieces() const { return values_.size(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Extends a fitted vector to [0, 1] with the sample abscissae as
/// breakpoints. Throws on length mismatch.
StepFunction extend(const SortedSample& sample,
                    const std::vector<double>& fitted);

/// Exact L2(uniform) distance between two step functions, integrated over
/// the merged breakpoints.
double l2_distance(const StepFunction& f, const StepFunction& g);

/// Grid approximation of the L2(uniform) distance between an arbitrary
/// integrand and a step function, using m midpoint nodes.
double l2_distance_grid(const std::function<double(double)>& f,
                        const StepFunction& g, std::size_t m);

}  // namespace iir
