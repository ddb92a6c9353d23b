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

#ifndef ICB_MEDIATOR_HPP_
#define ICB_MEDIATOR_HPP_

#include <utility>
#include <vector>

#include "icb/allocation.hpp"
#include "icb/graph_model.hpp"
#include "icb/payments.hpp"

namespace icb {

// One row of a node's internal table: for packets originating at source_id,
// forward to node_list (the node's SRBT children; empty for non-forwarders)
// and settle `payment` with the mediator.
struct InternalTableEntry {
  NodeId source_id = 0;
  std::vector<NodeId> node_list;
  double payment = 0.0;
};

// The mediator elicits types, computes the allocation and payments for the
// selected mechanism, and issues one table entry per node for this source.
// Tables are immutable once issued. DSIC-B rounds require a biconnected
// graph (NotBiconnectedError).
std::vector<InternalTableEntry> mediator_round(const NetworkModel& net,
                                               const CostProfile& announced,
                                               Mechanism mechanism,
                                               AllocationRule rule = AllocationRule::kLcpTree);

// Result of executing a broadcast by table lookup.
struct BroadcastTrace {
  std::vector<std::pair<NodeId, NodeId>> delivery_order;  // (from, to) events
  std::vector<double> ledger;                             // per-node net money
  std::vector<int> packets_received;                      // per-node count
};

// Simulates forwarding from the source along the node lists. Every non-source
// node must be reached (DeliveryFailureError otherwise); the ledger mirrors
// the table payments, which the mediator reconciles.
BroadcastTrace execute_broadcast(const std::vector<InternalTableEntry>& tables,
                                 const NetworkModel& net);

}  // namespace icb

#endif  // ICB_MEDIATOR_HPP_
