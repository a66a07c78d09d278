#pragma once

#include <cstddef>
#include <vector>

namespace iir {

enum class Direction { isotone, antitone };

/// Maximal run of indices [begin, end) sharing one fitted level.
struct Block {
  std::size_t begin;
  std::size_t end;
  double level;
};

/// Weighted least-squares projection of a response vector onto the cone of
/// non-decreasing (isotone) or non-increasing (antitone) vectors.
struct MonotoneFit {
  std::vector<double> values;
  Direction direction = Direction::isotone;
  std::vector<Block> blocks;
  std::size_t jumps = 0;  // blocks.size() - 1
};

/// Projection onto the isotone cone by weighted pool-adjacent-violators.
/// Pooling happens only on strict violations; jump count uses exact
/// value comparison. O(n).
MonotoneFit iso(const std::vector<double>& ys, const std::vector<double>& ws);

/// Projection onto the antitone cone: anti(y) = -iso(-y).
MonotoneFit anti(const std::vector<double>& ys, const std::vector<double>& ws);

/// O(n^3) reference: u_i = max_{l<=i} min_{j>=i} mean_w(y[l..j]).
/// Evaluates both the max-min and min-max orderings and throws
/// std::logic_error if they disagree beyond 1e-9.
std::vector<double> iso_minmax_oracle(const std::vector<double>& ys,
                                      const std::vector<double>& ws);

/// Max over trial vectors u (members of the fit's cone) of the weighted
/// inner product <y - fit, u - fit>_n. Non-positive for a correct metric
/// projection. Throws if a trial vector lies outside the cone.
double projection_residual_check(const std::vector<double>& ys,
                                 const std::vector<double>& ws,
                                 const MonotoneFit& fit,
                                 const std::vector<std::vector<double>>& trials);

}  // namespace iir
