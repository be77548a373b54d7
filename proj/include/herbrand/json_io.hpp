#pragma once

#include <optional>

#include <json.hpp>

#include "herbrand/enumerate.hpp"
#include "herbrand/plfun.hpp"
#include "herbrand/ramification.hpp"
#include "herbrand/reps.hpp"

namespace herbrand {

using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are emitted as JSON numbers, larger ones as
// decimal strings. Rationals are [num, den] in lowest terms.
Json to_json(const Integer& z);
Json to_json(const Rational& q);
Json to_json(const PLFunction& f);
Json to_json(const Filtration& f);
Json to_json(const CyclicWildSpec& s);
Json to_json(const TowerSpec& t);
Json to_json(const CarayolSpec& c);
Json to_json(const SlopeReport& r, std::optional<AdjointDomain> domain);
Json to_json(const SweepConfig& c);
Json to_json(const Certificate& c);
Json to_json(const VerificationReport& r);

// Parsers throw InvalidSpec naming the offending field. Rationals accept
// [n, d], a bare integer, or a "n/d" string.
Rational rational_from_json(const Json& j);
PLFunction plfunction_from_json(const Json& j);
Filtration filtration_from_json(const Json& j);
// Field parsing only; orders default to dropping by p at each break.
Filtration filtration_fields_from_json(const Json& j);
CyclicWildSpec cyclic_from_json(const Json& j);
// A wild layer is a Filtration unless it carries "increments"; cyclic data is
// validated and converted.
Filtration wild_layer_from_json(const Json& j);
TowerSpec tower_from_json(const Json& j);
CarayolSpec carayol_from_json(const Json& j);
SweepConfig sweep_config_from_json(const Json& j);

Json parse_json_text(const std::string& text);

}  // namespace herbrand
