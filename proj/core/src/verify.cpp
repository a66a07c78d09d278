#include "iir/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace iir {

namespace {

double dot_n(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s / static_cast<double>(a.size());
}

}  // namespace

StepBasis build_basis(std::size_t n, std::size_t N) {
  if (N < 1 || N > n)
    throw std::invalid_argument("basis dimension must satisfy 1 <= N <= n");
  StepBasis basis;
  basis.n = n;
  basis.N = N;
  basis.vectors.reserve(N);
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t zeros = (j * n) / N;
    std::vector<double> h(n, 1.0);
    std::fill(h.begin(), h.begin() + static_cast<long>(zeros), 0.0);
    basis.vectors.push_back(std::move(h));
  }
  return basis;
}

StepBasis build_antitone_basis(std::size_t n, std::size_t N) {
  StepBasis basis = build_basis(n, N);
  for (auto& h : basis.vectors) std::reverse(h.begin(), h.end());
  return basis;
}

double subspace_distance(const std::vector<double>& f, const StepBasis& basis) {
  if (f.size() != basis.n)
    throw std::invalid_argument("vector length differs from basis dimension");

  // Modified Gram-Schmidt under the empirical inner product.
  std::vector<std::vector<double>> q;
  q.reserve(basis.N);
  for (const auto& h : basis.vectors) {
    std::vector<double> v = h;
    for (const auto& e : q) {
      const double c = dot_n(v, e);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * e[i];
    }
    const double norm = std::sqrt(dot_n(v, v));
    if (norm <= 1e-14) continue;  // degenerate when floor collapses columns
    for (double& x : v) x /= norm;
    q.push_back(std::move(v));
  }

  std::vector<double> residual = f;
  for (const auto& e : q) {
    const double c = dot_n(residual, e);
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= c * e[i];
  }
  return std::sqrt(dot_n(residual, residual));
}

double lemma_delta(double C, std::size_t N) {
  return 2.0 * std::sqrt(2.0) * C / std::sqrt(static_cast<double>(N));
}

LemmaAuditResult lemma_bound_audit(double C, std::size_t n, std::size_t N,
                                   std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
  const StepBasis basis = build_basis(n, N);
  const double delta = lemma_delta(C, N);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double max_ratio = 0.0;
  std::vector<double> f(n);
  for (std::size_t t = 0; t < trials; ++t) {
    // Cumulative sums of non-negative increments, rescaled to span [-C, C].
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += unif(rng);
      f[i] = acc;
    }
    const double lo = f.front(), hi = f.back();
    if (hi > lo) {
      for (double& x : f) x = -C + 2.0 * C * (x - lo) / (hi - lo);
    } else {
      std::fill(f.begin(), f.end(), 0.0);
    }
    max_ratio = std::max(max_ratio, subspace_distance(f, basis) / delta);
  }
  return {max_ratio, delta, trials};
}

}  // namespace iir
