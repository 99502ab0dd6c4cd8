// Copyright 2026 The DRAG Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include "drag/evaluation.h"
#include "json.hpp"

namespace drag::eval {

std::string report_to_json(const EvaluationReport& report) {
  nlohmann::json j;
  j["game_value"] = report.game_value;
  j["duality_gap"] = report.duality_gap;
  j["full_information"] = {{"per_type", report.full_info_per_type},
                           {"mixture", report.full_info_mixture}};
  j["value_of_deception"] =
      report.value_of_deception ? nlohmann::json(*report.value_of_deception)
                                : nlohmann::json(nullptr);
  j["exploitability"] = {
      {"defender_best_response", report.exploitability.defender_br_value},
      {"attacker_best_response", report.exploitability.attacker_br_value},
      {"absolute", report.exploitability.absolute},
      {"relative", report.exploitability.relative},
  };
  j["tie_break"] = report.tie_break;
  nlohmann::json rows = nlohmann::json::array();
  for (const DeviationRow& row : report.deviations) {
    rows.push_back({{"name", row.name},
                    {"side", row.attacker_side ? "attacker" : "defender"},
                    {"value", row.value},
                    {"delta", row.delta}});
  }
  j["deviations"] = rows;
  if (report.rollout) {
    j["rollout"] = {{"mean", report.rollout->mean},
                    {"std_error", report.rollout->std_error},
                    {"episodes", report.rollout->episodes}};
  } else {
    j["rollout"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace drag::eval
