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

#ifndef ICB_ALLOCATION_HPP_
#define ICB_ALLOCATION_HPP_

#include <vector>

#include "icb/graph_model.hpp"

namespace icb {

// Node-weighted least cost paths from the source. dist[v] is the minimum over
// s->v paths of the sum of announced costs of intermediate nodes (strictly
// between s and v); nodes adjacent to the source have dist 0. parent encodes
// one optimal predecessor per node (-1 for the source); ties are broken by
// smallest predecessor id, so the result is deterministic.
struct LeastCostPaths {
  std::vector<double> dist;
  std::vector<NodeId> parent;
};

LeastCostPaths least_cost_paths(const NetworkModel& net, const CostProfile& theta);

// Source rooted broadcast tree. routers is the set R of non-leaf tree nodes
// excluding the source, sorted ascending; tree_cost is the sum of the
// routers' announced costs.
struct Srbt {
  std::vector<NodeId> parent;   // parent[source] == -1
  std::vector<NodeId> routers;  // sorted
  double tree_cost = 0.0;
};

// Shortest-path tree from least_cost_paths.
Srbt build_srbt(const NetworkModel& net, const CostProfile& theta);

// Exact minimum-cost broadcast tree by subset enumeration: the cheapest
// router set R* such that {source} u R* induces a connected subgraph and
// every node is in it or adjacent to it. Ties go to the lexicographically
// smallest router set. Guarded: throws InstanceTooLargeError for n > 16.
Srbt optimal_broadcast_tree(const NetworkModel& net, const CostProfile& theta);

// Which tree the mechanisms allocate over.
enum class AllocationRule { kLcpTree, kExactOptimal };

Srbt build_tree(const NetworkModel& net, const CostProfile& theta, AllocationRule rule);

// k_i = 1 iff node i forwards (is a router).
struct Allocation {
  std::vector<int> k;
};

Allocation allocation_of(const Srbt& srbt, int n);

// Children lists of the tree, each sorted ascending.
std::vector<std::vector<NodeId>> srbt_children(const Srbt& srbt, int n);

}  // namespace icb

#endif  // ICB_ALLOCATION_HPP_
