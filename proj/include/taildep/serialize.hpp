#pragma once

#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "taildep/envelope.hpp"
#include "taildep/measures.hpp"
#include "taildep/order.hpp"
#include "taildep/tdf.hpp"

namespace taildep {

using Json = nlohmann::ordered_json;

/// {"m": m, "values": [...], "kind": "validated" | "empirical"}. Doubles are
/// written in shortest round-trip form, so parsing restores them bit-exactly.
Json to_json(const TailDependenceFunction& tdf);

/// Throws ErrorKind::Data for malformed documents and ErrorKind::Validation
/// when the values violate the constraints of the declared kind.
TailDependenceFunction tdf_from_json(const Json& json);
TailDependenceFunction parse_tdf(std::string_view text);

/// {"name", "params", "value", "normalization"}.
Json to_json(const MeasureValue& measure);
Json to_json(std::span<const MeasureValue> measures);

/// {"relation", "witnesses": {"first_exceeds", "second_exceeds"}}.
Json to_json(const OrderResult& result);

Json to_json(const EnvelopeResult& result);

}  // namespace taildep
