#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "iir/monotone.hpp"
#include "iir/sample.hpp"
#include "iir/select.hpp"

namespace iir {

/// Absolute value change above which two adjacent fitted values count as a
/// jump. Guards against pooling noise creating spurious jumps.
inline constexpr double kJumpTolerance = 1e-9;

struct IterationRecord {
  std::size_t k;
  double rss;          // weighted residual sum of squares
  std::size_t jumps;   // jumps of the combined fit
  double b_mean;       // weighted mean of the antitone part
};

enum class Termination {
  running,        // never iterated or mid-fit
  reached_k_max,
  stalled,        // sup-norm change < 1e-14 over 50 consecutive iterations
  interpolated,   // residual sup norm reached exact zero
  selected,       // a stopping rule picked k
};

/// Backfitting state: the isotone/antitone decomposition of the sample at
/// iteration k, plus the per-iteration scalar trace.
struct IirModel {
  SortedSample sample;
  std::size_t k = 0;
  MonotoneFit u;
  MonotoneFit b;
  std::vector<double> fitted;  // u.values + b.values
  std::vector<IterationRecord> trace;
  Termination termination = Termination::running;
  StopRule stop;
  CriterionTrace criterion;                           // penalized rules
  std::vector<std::pair<std::size_t, double>> validation_curve;  // holdout
};

/// Fresh model at k = 0 with b identically zero.
IirModel init(SortedSample sample);

/// One backfitting cycle: u <- iso(y - b), b <- anti(y - u).
void iir_step(IirModel& model);

struct FitOptions {
  std::size_t stall_window = 50;
  double stall_tol = 1e-14;
};

/// Runs the cycle until the stopping rule fires or k reaches k_max.
/// Penalized and holdout rules refit to the selected k so the returned
/// model state is the selected one. Throws if k_max is zero.
IirModel fit(const SortedSample& sample, const StopRule& stop,
             std::size_t k_max, const FitOptions& options = {});

/// max_i |fitted_i - y_i|.
double residual_sup_norm(const IirModel& model);

struct DecompositionReport {
  double u_mean;
  double b_mean;
  std::size_t joint_jumps;  // indices where both u and b change value
};

DecompositionReport decomposition_report(const IirModel& model);

/// Weighted RSS of the current fit.
double rss(const IirModel& model);

std::string to_string(Termination t);

}  // namespace iir
