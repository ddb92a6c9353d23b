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

#include "icb/mediator.hpp"

#include <queue>
#include <string>

namespace icb {

std::vector<InternalTableEntry> mediator_round(const NetworkModel& net,
                                               const CostProfile& announced,
                                               Mechanism mechanism, AllocationRule rule) {
  validate_profile(net, announced);
  Srbt srbt = build_tree(net, announced, rule);
  Outcome outcome = mechanism_outcome(net, announced, srbt, mechanism);
  std::vector<std::vector<NodeId>> children = srbt_children(srbt, net.n);

  std::vector<InternalTableEntry> tables(net.n);
  for (NodeId i = 0; i < net.n; ++i) {
    tables[i].source_id = net.source;
    tables[i].node_list = children[i];
    tables[i].payment = outcome.payments[i];
  }
  return tables;
}

BroadcastTrace execute_broadcast(const std::vector<InternalTableEntry>& tables,
                                 const NetworkModel& net) {
  const int n = net.n;
  if (static_cast<int>(tables.size()) != n) {
    throw DeliveryFailureError("table count does not match network size");
  }
  const NodeId source = tables[net.source].source_id;

  BroadcastTrace trace;
  trace.ledger.assign(n, 0.0);
  trace.packets_received.assign(n, 0);

  std::queue<NodeId> holding;
  holding.push(source);
  while (!holding.empty()) {
    NodeId u = holding.front();
    holding.pop();
    for (NodeId v : tables[u].node_list) {
      trace.delivery_order.emplace_back(u, v);
      trace.packets_received[v] += 1;
      if (trace.packets_received[v] == 1) holding.push(v);
    }
  }

  for (NodeId v = 0; v < n; ++v) {
    if (v != source && trace.packets_received[v] == 0) {
      throw DeliveryFailureError("node " + std::to_string(v + 1) +
                                 " never received the broadcast packet");
    }
  }
  for (NodeId v = 0; v < n; ++v) trace.ledger[v] = tables[v].payment;
  return trace;
}

}  // namespace icb
