#include "json_io.hpp"

#include <algorithm>

#include "errors.hpp"

namespace heatshape {

void reject_unknown_fields(const json& obj, const char* where,
                           std::initializer_list<const char*> allowed) {
  if (!obj.is_object())
    throw ConfigError(std::string(where) + ": expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end()) {
      throw ConfigError(std::string(where) + ": unknown field \"" + key + "\"");
    }
  }
}

double require_number(const json& obj, const char* where, const char* key) {
  if (!obj.contains(key))
    throw ConfigError(std::string(where) + ": missing field \"" + key + "\"");
  if (!obj[key].is_number())
    throw ConfigError(std::string(where) + ": field \"" + key +
                      "\" must be a number");
  return obj[key].get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ConfigError(std::string("field \"") + key + "\" must be a number");
  return obj[key].get<double>();
}

int int_or(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw ConfigError(std::string("field \"") + key + "\" must be an integer");
  return obj[key].get<int>();
}

RadialSource source_from_json(const json& spec) {
  reject_unknown_fields(spec, "source", {"kind", "params", "n"});
  if (!spec.contains("kind") || !spec["kind"].is_string())
    throw ConfigError("source: missing string field \"kind\"");
  const std::string kind = spec["kind"].get<std::string>();
  const int n = int_or(spec, "n", 2);
  const json params = spec.contains("params") ? spec["params"] : json::object();

  if (kind == "constant") {
    reject_unknown_fields(params, "source.params", {"value", "floor"});
    return RadialSource::constant(require_number(params, "source.params", "value"),
                                  n, number_or(params, "floor", 0.0));
  }
  if (kind == "gaussian") {
    reject_unknown_fields(params, "source.params", {"delta", "floor"});
    return RadialSource::gaussian(require_number(params, "source.params", "delta"),
                                  n, number_or(params, "floor", 0.0));
  }
  if (kind == "polynomial") {
    reject_unknown_fields(params, "source.params", {"coeffs", "rmax", "floor"});
    if (!params.contains("coeffs") || !params["coeffs"].is_array())
      throw ConfigError("source.params: \"coeffs\" must be an array");
    std::vector<double> coeffs;
    for (const auto& c : params["coeffs"]) {
      if (!c.is_number())
        throw ConfigError("source.params.coeffs: entries must be numbers");
      coeffs.push_back(c.get<double>());
    }
    return RadialSource::polynomial(std::move(coeffs),
                                    require_number(params, "source.params", "rmax"),
                                    n, number_or(params, "floor", 0.0));
  }
  if (kind == "tabulated") {
    reject_unknown_fields(params, "source.params", {"radii", "values", "floor"});
    auto read_array = [&](const char* key) {
      if (!params.contains(key) || !params[key].is_array())
        throw ConfigError(std::string("source.params: \"") + key +
                          "\" must be an array");
      std::vector<double> out;
      for (const auto& c : params[key]) {
        if (!c.is_number())
          throw ConfigError(std::string("source.params.") + key +
                            ": entries must be numbers");
        out.push_back(c.get<double>());
      }
      return out;
    };
    return RadialSource::tabulated(read_array("radii"), read_array("values"), n,
                                   number_or(params, "floor", 0.0));
  }
  throw ConfigError("source: unknown kind \"" + kind + "\"");
}

json stability_report_to_json(const StabilityReport& rep) {
  json j;
  j["lhs"] = rep.lhs;
  j["A0"] = rep.A0;
  j["A1"] = rep.A1;
  j["A2"] = rep.A2;
  j["beta1"] = rep.beta1 ? json(*rep.beta1) : json(nullptr);
  j["beta2"] = rep.beta2 ? json(*rep.beta2) : json(nullptr);
  j["verdict"] = verdict_name(rep.verdict);
  j["clause"] = rep.clause;
  j["underflow"] = rep.underflow;
  return j;
}

}  // namespace heatshape
