#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace iir {

/// 0/1 step basis spanning the subspace that approximates bounded isotone
/// vectors: h_j[i] = 0 for i < floor(j n / N), 1 otherwise (0-based i).
struct StepBasis {
  std::size_t n = 0;
  std::size_t N = 0;
  std::vector<std::vector<double>> vectors;  // N vectors of length n
};

/// Throws unless 1 <= N <= n.
StepBasis build_basis(std::size_t n, std::size_t N);

/// Empirical-norm distance from f to span(basis), via orthogonalization of
/// the basis. The basis is full rank by construction.
double subspace_distance(const std::vector<double>& f, const StepBasis& basis);

/// delta = 2 sqrt(2) C / sqrt(N): the guaranteed approximation radius.
double lemma_delta(double C, std::size_t N);

struct LemmaAuditResult {
  double max_ratio;   // max over trials of distance / delta
  double delta;
  std::size_t trials;
};

/// Samples random non-decreasing vectors with |f| <= C (cumulative sums of
/// non-negative increments rescaled to span [-C, C]) and reports the worst
/// observed distance/delta ratio. The bound guarantees max_ratio <= 1.
LemmaAuditResult lemma_bound_audit(double C, std::size_t n, std::size_t N,
                                   std::size_t trials, std::uint64_t seed);

/// Mirrored basis for bounded antitone vectors: h_j reversed.
StepBasis build_antitone_basis(std::size_t n, std::size_t N);

}  // namespace iir
