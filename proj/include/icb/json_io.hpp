// Copyright 2026 The icbsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ICB_JSON_IO_HPP_
#define ICB_JSON_IO_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "icb/allocation.hpp"
#include "icb/experiments.hpp"
#include "icb/graph_model.hpp"
#include "icb/mediator.hpp"
#include "icb/payments.hpp"
#include "icb/verification.hpp"

namespace icb {

// Network file schema (all ids 1-based):
// {
//   "n": int,
//   "source": int,
//   "edges": [[u, v], ...],
//   "types": [{"discrete": {"values": [...], "probs": [...]}}
//             | {"uniform": {"lo": x, "hi": y}}, ...]
// }
nlohmann::json network_to_json(const NetworkModel& net);
NetworkModel network_from_json(const nlohmann::json& j);  // throws SchemaError
NetworkModel load_network(const std::string& path);       // throws FileNotFoundError

// {"parent": {"2": 1, ...}, "routers": [...], "cost": x}, ids 1-based.
nlohmann::json srbt_to_json(const Srbt& srbt, int n);

// {"mechanism": ..., "k": [...], "t": [...], "routers": [...], "budget_sum": x}
nlohmann::json outcome_to_json(const Outcome& outcome);

nlohmann::json report_to_json(const PropertyReport& report);

nlohmann::json summary_to_json(const std::vector<SummaryRow>& rows);

// Trace export: one {"from": u, "to": v} line per event followed by
// {"node": i, "net": x} ledger lines, ids 1-based.
std::string trace_to_json_lines(const BroadcastTrace& trace);

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

}  // namespace icb

#endif  // ICB_JSON_IO_HPP_
