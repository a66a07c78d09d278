#include "iir/model_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace iir {

namespace {

using nlohmann::json;

json step_to_json(const StepFunction& f) {
  return json{{"breakpoints", f.breakpoints()}, {"values", f.values()}};
}

StepFunction step_from_json(const json& j) {
  return StepFunction(j.at("breakpoints").get<std::vector<double>>(),
                      j.at("values").get<std::vector<double>>());
}

}  // namespace

double ModelFile::predict(double x) const {
  if (!fitted) throw std::runtime_error("model holds no fitted function");
  const double t = rescale.to_unit(x);
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("out of domain");
  return (*fitted)(t);
}

ModelFile to_model_file(const IirModel& model, const AffineMap& rescale) {
  ModelFile out;
  out.n = model.sample.size();
  out.x_min = rescale.from_unit(model.sample.xs.front());
  out.x_max = rescale.from_unit(model.sample.xs.back());
  out.rescale = rescale;
  out.k = model.k;
  out.termination = model.termination;
  out.stop = model.stop;
  out.u = extend(model.sample, model.u.values);
  out.b = extend(model.sample, model.b.values);
  out.fitted = extend(model.sample, model.fitted);
  out.trace = model.trace;
  out.criterion = model.criterion;
  out.validation_curve = model.validation_curve;
  return out;
}

std::string to_json(const ModelFile& model) {
  json j;
  j["schema_version"] = model.schema_version;
  j["sample"] = {{"n", model.n}, {"x_min", model.x_min}, {"x_max", model.x_max}};
  j["rescale"] = {{"offset", model.rescale.offset},
                  {"scale", model.rescale.scale}};
  j["k"] = model.k;
  j["termination"] = to_string(model.termination);
  j["stop_rule"] = {{"kind", to_string(model.stop.kind)},
                    {"phi", to_string(model.stop.phi)},
                    {"holdout_fraction", model.stop.holdout_fraction},
                    {"seed", model.stop.seed}};
  if (model.stop.patience) j["stop_rule"]["patience"] = *model.stop.patience;
  if (model.u) j["u"] = step_to_json(*model.u);
  if (model.b) j["b"] = step_to_json(*model.b);
  if (model.fitted) j["fitted"] = step_to_json(*model.fitted);

  json trace = json::array();
  for (const IterationRecord& rec : model.trace)
    trace.push_back({{"k", rec.k},
                     {"rss", rec.rss},
                     {"jumps", rec.jumps},
                     {"b_mean", rec.b_mean}});
  j["trace"] = trace;

  json criterion = json::array();
  for (const CriterionPoint& p : model.criterion.points)
    // -inf (perfect fit) is not representable in JSON; stored as null.
    criterion.push_back({{"k", p.k},
                         {"rss", p.rss},
                         {"p", p.p},
                         {"value", std::isfinite(p.value) ? json(p.value)
                                                          : json()}});
  j["criterion"] = {{"points", criterion},
                    {"selected_k", model.criterion.selected_k}};

  json curve = json::array();
  for (const auto& [k, mse] : model.validation_curve)
    curve.push_back({{"k", k}, {"mse", mse}});
  j["validation_curve"] = curve;

  return j.dump(2);
}

ModelFile model_from_json(const std::string& text) {
  const json j = json::parse(text);
  ModelFile model;
  model.schema_version = j.at("schema_version").get<int>();
  if (model.schema_version != 1)
    throw std::runtime_error("unsupported model schema version");
  model.n = j.at("sample").at("n").get<std::size_t>();
  model.x_min = j.at("sample").at("x_min").get<double>();
  model.x_max = j.at("sample").at("x_max").get<double>();
  model.rescale.offset = j.at("rescale").at("offset").get<double>();
  model.rescale.scale = j.at("rescale").at("scale").get<double>();
  model.k = j.at("k").get<std::size_t>();
  const std::string term = j.at("termination").get<std::string>();
  for (Termination t :
       {Termination::running, Termination::reached_k_max, Termination::stalled,
        Termination::interpolated, Termination::selected})
    if (to_string(t) == term) model.termination = t;

  const json& sr = j.at("stop_rule");
  model.stop.kind = stop_kind_from_string(sr.at("kind").get<std::string>());
  model.stop.phi = penalty_from_string(sr.at("phi").get<std::string>());
  model.stop.holdout_fraction = sr.at("holdout_fraction").get<double>();
  model.stop.seed = sr.at("seed").get<std::uint64_t>();
  if (sr.contains("patience"))
    model.stop.patience = sr.at("patience").get<std::size_t>();

  if (j.contains("u")) model.u = step_from_json(j.at("u"));
  if (j.contains("b")) model.b = step_from_json(j.at("b"));
  if (j.contains("fitted")) model.fitted = step_from_json(j.at("fitted"));

  for (const json& rec : j.at("trace"))
    model.trace.push_back({rec.at("k").get<std::size_t>(),
                           rec.at("rss").get<double>(),
                           rec.at("jumps").get<std::size_t>(),
                           rec.at("b_mean").get<double>()});

  const json& crit = j.at("criterion");
  model.criterion.selected_k = crit.at("selected_k").get<std::size_t>();
  for (const json& p : crit.at("points")) {
    const json& value = p.at("value");
    model.criterion.points.push_back(
        {p.at("k").get<std::size_t>(), p.at("rss").get<double>(),
         p.at("p").get<std::size_t>(),
         value.is_null() ? -std::numeric_limits<double>::infinity()
                         : value.get<double>()});
  }

  for (const json& p : j.at("validation_curve"))
    model.validation_curve.push_back(
        {p.at("k").get<std::size_t>(), p.at("mse").get<double>()});

  return model;
}

void save_model(const ModelFile& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_json(model) << '\n';
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace iir
