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

#include "icb/json_io.hpp"

#include <fstream>
#include <sstream>

namespace icb {

using nlohmann::json;

json network_to_json(const NetworkModel& net) {
  json j;
  j["n"] = net.n;
  j["source"] = net.source + 1;
  json edges = json::array();
  for (const auto& [u, v] : net.edges) edges.push_back({u + 1, v + 1});
  j["edges"] = std::move(edges);
  json types = json::array();
  for (const auto& ts : net.type_spaces) {
    if (ts.kind == TypeSpace::Kind::kDiscrete) {
      types.push_back({{"discrete", {{"values", ts.values}, {"probs", ts.probs}}}});
    } else {
      types.push_back({{"uniform", {{"lo", ts.lo}, {"hi", ts.hi}}}});
    }
  }
  j["types"] = std::move(types);
  return j;
}

NetworkModel network_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("source") ||
        !j.contains("edges") || !j.contains("types")) {
      throw SchemaError("network file needs n, source, edges and types");
    }
    const int n = j.at("n").get<int>();
    const int source = j.at("source").get<int>() - 1;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw SchemaError("edges must be [u, v] pairs");
      edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
    }
    std::vector<TypeSpace> types;
    for (const auto& t : j.at("types")) {
      if (t.contains("discrete")) {
        const auto& d = t.at("discrete");
        types.push_back(TypeSpace::discrete(d.at("values").get<std::vector<double>>(),
                                            d.at("probs").get<std::vector<double>>()));
      } else if (t.contains("uniform")) {
        const auto& u = t.at("uniform");
        types.push_back(TypeSpace::uniform_interval(u.at("lo").get<double>(),
                                                    u.at("hi").get<double>()));
      } else {
        throw SchemaError("each type must be discrete or uniform");
      }
    }
    return build_network(n, std::move(edges), source, std::move(types));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed network JSON: ") + e.what());
  }
}

NetworkModel load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("cannot parse ") + path + ": " + e.what());
  }
  return network_from_json(j);
}

json srbt_to_json(const Srbt& srbt, int n) {
  json parent = json::object();
  for (NodeId v = 0; v < n; ++v) {
    if (srbt.parent[v] >= 0) parent[std::to_string(v + 1)] = srbt.parent[v] + 1;
  }
  json routers = json::array();
  for (NodeId r : srbt.routers) routers.push_back(r + 1);
  return json{{"parent", std::move(parent)},
              {"routers", std::move(routers)},
              {"cost", srbt.tree_cost}};
}

json outcome_to_json(const Outcome& outcome) {
  json routers = json::array();
  for (size_t i = 0; i < outcome.allocation.k.size(); ++i) {
    if (outcome.allocation.k[i] == 1) routers.push_back(i + 1);
  }
  json j{{"mechanism", mechanism_name(outcome.mechanism)},
         {"k", outcome.allocation.k},
         {"t", outcome.payments},
         {"routers", std::move(routers)},
         {"budget_sum", outcome.budget_sum()}};
  if (outcome.mechanism == Mechanism::kDsicB) {
    j["received"] = outcome.received;
    j["paid"] = outcome.paid;
  }
  return j;
}

json report_to_json(const PropertyReport& report) {
  json j{{"property", report.property_name},
         {"passed", report.passed},
         {"instances_checked", report.instances_checked}};
  if (report.witness) {
    json w{{"description", report.witness->description}};
    for (const auto& [key, value] : report.witness->numbers) w[key] = value;
    if (!report.witness->profile.empty()) w["profile"] = report.witness->profile;
    j["witness"] = std::move(w);
  }
  return j;
}

json summary_to_json(const std::vector<SummaryRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    arr.push_back({{"n", row.n},
                   {"mechanism", mechanism_name(row.mechanism)},
                   {"mean_apr", row.mean_apr},
                   {"mean_wor", row.mean_wor},
                   {"min_wor", row.min_wor},
                   {"max_wor", row.max_wor},
                   {"skips", row.skips}});
  }
  return arr;
}

std::string trace_to_json_lines(const BroadcastTrace& trace) {
  std::ostringstream os;
  for (const auto& [from, to] : trace.delivery_order) {
    os << json{{"from", from + 1}, {"to", to + 1}}.dump() << '\n';
  }
  for (size_t i = 0; i < trace.ledger.size(); ++i) {
    os << json{{"node", static_cast<int>(i) + 1}, {"net", trace.ledger[i]}}.dump() << '\n';
  }
  return os.str();
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig cfg;
  try {
    if (j.contains("n_values")) cfg.n_values = j.at("n_values").get<std::vector<int>>();
    if (j.contains("instances")) cfg.instances = j.at("instances").get<int>();
    if (j.contains("cost_lo")) cfg.cost_lo = j.at("cost_lo").get<double>();
    if (j.contains("cost_hi")) cfg.cost_hi = j.at("cost_hi").get<double>();
    if (j.contains("edge_density")) cfg.edge_density = j.at("edge_density").get<double>();
    if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<uint64_t>();
    if (j.contains("biconnect_retries")) {
      cfg.biconnect_retries = j.at("biconnect_retries").get<int>();
    }
    if (j.contains("allocation_rule")) {
      const std::string rule = j.at("allocation_rule").get<std::string>();
      if (rule == "optimal") {
        cfg.allocation_rule = AllocationRule::kExactOptimal;
      } else if (rule == "lcp") {
        cfg.allocation_rule = AllocationRule::kLcpTree;
      } else {
        throw ConfigInvalidError("allocation_rule must be lcp or optimal");
      }
    }
    if (j.contains("mechanisms")) {
      cfg.mechanisms.clear();
      for (const auto& m : j.at("mechanisms")) {
        const std::string name = m.get<std::string>();
        if (name == "bicb") {
          cfg.mechanisms.push_back(Mechanism::kBicB);
        } else if (name == "dsicb") {
          cfg.mechanisms.push_back(Mechanism::kDsicB);
        } else {
          throw ConfigInvalidError("unknown mechanism " + name);
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigInvalidError(std::string("malformed experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace icb
