#include "taildep/serialize.hpp"

#include <vector>

#include "taildep/error.hpp"

namespace taildep {

Json to_json(const TailDependenceFunction& tdf) {
  Json out;
  out["m"] = tdf.grid_size();
  out["values"] = std::vector<double>(tdf.values().begin(), tdf.values().end());
  out["kind"] = tdf.kind() == TdfKind::Validated ? "validated" : "empirical";
  return out;
}

TailDependenceFunction tdf_from_json(const Json& json) {
  if (!json.is_object() || !json.contains("m") || !json.contains("values") ||
      !json.contains("kind")) {
    fail(ErrorKind::Data, "TDF JSON needs \"m\", \"values\" and \"kind\"");
  }
  const auto& values = json.at("values");
  const auto& kind = json.at("kind");
  if (!json.at("m").is_number_unsigned() || !values.is_array() || !kind.is_string()) {
    fail(ErrorKind::Data, "TDF JSON has fields of the wrong type");
  }
  const auto m = json.at("m").get<std::size_t>();
  if (values.size() != m + 1) {
    fail(ErrorKind::Data, "TDF JSON declares m = " + std::to_string(m) + " but holds " +
                              std::to_string(values.size()) + " values");
  }
  std::vector<double> grid;
  grid.reserve(values.size());
  for (const auto& v : values) {
    if (!v.is_number()) fail(ErrorKind::Data, "TDF JSON values must be numbers");
    grid.push_back(v.get<double>());
  }
  const auto kind_text = kind.get<std::string>();
  if (kind_text != "validated" && kind_text != "empirical") {
    fail(ErrorKind::Data, "TDF kind must be \"validated\" or \"empirical\"");
  }
  return make_tdf(grid, kind_text == "validated");
}

TailDependenceFunction parse_tdf(std::string_view text) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Data, std::string("invalid JSON: ") + e.what());
  }
  return tdf_from_json(json);
}

Json to_json(const MeasureValue& measure) {
  Json params = Json::object();
  if (measure.name == MeasureName::PointEval) params["s0"] = measure.param;
  if (measure.name == MeasureName::LpNorm) params["p"] = measure.param;
  Json out;
  out["name"] = to_string(measure.name);
  out["params"] = std::move(params);
  out["value"] = measure.value;
  out["normalization"] = to_string(measure.normalization);
  return out;
}

Json to_json(std::span<const MeasureValue> measures) {
  Json out = Json::array();
  for (const auto& m : measures) out.push_back(to_json(m));
  return out;
}

namespace {

Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  Json out;
  out["s"] = w->s;
  out["first"] = w->first;
  out["second"] = w->second;
  return out;
}

}  // namespace

Json to_json(const OrderResult& result) {
  Json out;
  out["relation"] = to_string(result.relation);
  out["witnesses"]["first_exceeds"] = witness_json(result.first_exceeds);
  out["witnesses"]["second_exceeds"] = witness_json(result.second_exceeds);
  return out;
}

Json to_json(const EnvelopeResult& result) {
  Json out;
  out["min"] = result.min_value;
  out["max"] = result.max_value;
  out["argmin"] = to_json(result.argmin);
  out["argmax"] = to_json(result.argmax);
  return out;
}

}  // namespace taildep
