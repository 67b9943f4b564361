#ifndef HEATSHAPE_JSON_IO_HPP
#define HEATSHAPE_JSON_IO_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "ball_analysis.hpp"
#include "radial_source.hpp"

namespace heatshape {

using json = nlohmann::json;

// Source schema: {"kind": "constant"|"gaussian"|"polynomial"|"tabulated",
//                 "params": {...}, "n": int}; unknown fields rejected.
RadialSource source_from_json(const json& spec);

// Flat report object {lhs, A0, A1, A2, beta1, beta2, verdict, clause,
// underflow}; absent thresholds serialize as null.
json stability_report_to_json(const StabilityReport& rep);

// Throws ConfigError naming the offending field when `obj` holds a key
// outside `allowed`.
void reject_unknown_fields(const json& obj, const char* where,
                           std::initializer_list<const char*> allowed);

double require_number(const json& obj, const char* where, const char* key);
double number_or(const json& obj, const char* key, double fallback);
int int_or(const json& obj, const char* key, int fallback);

}  // namespace heatshape

#endif
