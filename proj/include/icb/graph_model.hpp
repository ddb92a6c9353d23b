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

#ifndef ICB_GRAPH_MODEL_HPP_
#define ICB_GRAPH_MODEL_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "icb/errors.hpp"

namespace icb {

// Node ids are dense 0-based indices internally; all human-facing output is
// 1-based.
using NodeId = int;

// A node's prior distribution over forwarding costs. Either a finite discrete
// distribution (canonical form: strictly increasing values) or a continuous
// uniform interval.
struct TypeSpace {
  enum class Kind { kDiscrete, kUniform };

  Kind kind = Kind::kUniform;
  std::vector<double> values;  // discrete only
  std::vector<double> probs;   // discrete only, sums to 1 within 1e-12
  double lo = 0.0;             // uniform only
  double hi = 0.0;             // uniform only

  // Throws InvalidTypeSpaceError on non-positive values, probabilities that
  // do not sum to 1, or values out of canonical order.
  static TypeSpace discrete(std::vector<double> values, std::vector<double> probs);
  static TypeSpace uniform_interval(double lo, double hi);

  // Uniform probabilities over the given values.
  static TypeSpace discrete_uniform(std::vector<double> values);
};

// Prior mean forwarding cost of a type space.
double mean_cost(const TypeSpace& ts);

// Announced (or true) forwarding costs, one per node, all positive.
struct CostProfile {
  std::vector<double> theta;
};

// The ad hoc network: a connected node-weighted undirected graph with one
// broadcast source and a prior type space per node. Immutable after
// construction and safe to share across threads.
struct NetworkModel {
  int n = 0;
  NodeId source = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;  // canonical: u < v, sorted
  std::vector<std::vector<NodeId>> adj;          // sorted neighbor lists
  std::vector<TypeSpace> type_spaces;

  bool has_edge(NodeId u, NodeId v) const;
};

// Validates and builds a network. Throws DisconnectedGraphError,
// DuplicateEdgeError, SelfLoopError, InvalidTypeSpaceError or InputError.
NetworkModel build_network(int n, std::vector<std::pair<NodeId, NodeId>> edges,
                           NodeId source, std::vector<TypeSpace> type_spaces);

// Erdos-Renyi G(n, p) instance with node 0 as source. Retries a bounded
// number of draws for connectivity, then augments the last draw with a random
// spanning tree, so the result is always connected. Every node's prior is
// UniformInterval(cost_lo, cost_hi) and true costs are drawn i.i.d. uniform.
// Deterministic for a fixed seed.
std::pair<NetworkModel, CostProfile> random_network(int n, double edge_density,
                                                    double cost_lo, double cost_hi,
                                                    uint64_t rng_seed);

// Random instance with discrete type spaces (2..max_values values per node,
// drawn from [cost_lo, cost_hi], random probabilities) and a true profile
// sampled from the priors. Used by the exact incentive checks.
std::pair<NetworkModel, CostProfile> random_discrete_network(
    int n, int max_values, double cost_lo, double cost_hi, double edge_density,
    uint64_t rng_seed);

// True iff the graph has no cut vertex and n >= 3. A 2-node graph is
// reported not biconnected.
bool is_biconnected(const NetworkModel& net);

// BFS reachability from the source; true iff all n nodes are reached.
bool is_connected(int n, const std::vector<std::vector<NodeId>>& adj, NodeId start);

// Validates a cost profile against a network: length n, strictly positive.
void validate_profile(const NetworkModel& net, const CostProfile& profile);

}  // namespace icb

#endif  // ICB_GRAPH_MODEL_HPP_
