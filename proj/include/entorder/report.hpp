#pragma once

#include <string>

#include <json.hpp>

#include "entorder/convertibility.hpp"
#include "entorder/oscillation.hpp"
#include "entorder/spectrum.hpp"

namespace entorder {

using Json = nlohmann::json;  // objects are std::map-backed, so keys come out sorted

/// Finite doubles as numbers; inf, -inf and nan as strings of those names.
Json json_number(double value);

Json to_json(const ConditionReport& report);
Json to_json(const SpectrumStats& stats);
Json to_json(const Window& window);
Json to_json(const TrendStats& stats);
Json to_json(const TargetEvidence& evidence);
Json to_json(const OscillationCertificate& certificate);
Json to_json(const ComparisonReport& report);
Json to_json(const MonotoneEstimate& estimate);

/// Sorted keys, two-space indent, %.17g floats, trailing newline. Equal
/// values always render to identical bytes.
std::string canonical_dump(const Json& value);

}  // namespace entorder
