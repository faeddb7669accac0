#pragma once

#include "json.hpp"

#include "ects/trigger/policy.hpp"

namespace ects {

// {"variant", "parameters", "cost"}; floats in shortest round-trip form.
nlohmann::json trigger_to_json(const TriggerModel& model);
TriggerModel trigger_from_json(const nlohmann::json& doc);

nlohmann::json cost_to_json(const CostModel& cost);
CostModel cost_from_json(const nlohmann::json& doc);

}  // namespace ects
