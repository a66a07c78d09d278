#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "iir/engine.hpp"
#include "iir/step_function.hpp"

namespace iir {

/// Affine map taking raw abscissae into [0, 1]: t(x) = (x - offset) / scale.
/// Identity when scale == 1 and offset == 0.
struct AffineMap {
  double offset = 0.0;
  double scale = 1.0;

  double to_unit(double x) const { return (x - offset) / scale; }
  double from_unit(double t) const { return offset + scale * t; }
  bool identity() const { return offset == 0.0 && scale == 1.0; }
};

/// Serializable fitted model: the step functions needed for prediction
/// plus the fitting record. Round-trips losslessly through JSON.
struct ModelFile {
  int schema_version = 1;
  std::size_t n = 0;
  double x_min = 0.0;
  double x_max = 1.0;
  AffineMap rescale;
  std::size_t k = 0;
  Termination termination = Termination::running;
  StopRule stop;
  std::optional<StepFunction> u;
  std::optional<StepFunction> b;
  std::optional<StepFunction> fitted;
  std::vector<IterationRecord> trace;
  CriterionTrace criterion;
  std::vector<std::pair<std::size_t, double>> validation_curve;

  /// Prediction at a raw-scale x; throws std::domain_error outside the
  /// recorded range.
  double predict(double x) const;
};

ModelFile to_model_file(const IirModel& model, const AffineMap& rescale = {});

std::string to_json(const ModelFile& model);
ModelFile model_from_json(const std::string& text);

void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

}  // namespace iir
