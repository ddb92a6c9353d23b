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

#include "icb/allocation.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace icb {

namespace {

// Weight a node contributes once it forwards along a path: the source
// originates for free, every other node charges its announced cost.
double forward_weight(const NetworkModel& net, const CostProfile& theta, NodeId u) {
  return u == net.source ? 0.0 : theta.theta[u];
}

std::vector<NodeId> routers_of_tree(const std::vector<NodeId>& parent, NodeId source) {
  std::vector<char> internal(parent.size(), 0);
  for (size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] >= 0) internal[parent[v]] = 1;
  }
  std::vector<NodeId> routers;
  for (size_t v = 0; v < parent.size(); ++v) {
    if (internal[v] && static_cast<NodeId>(v) != source) routers.push_back(v);
  }
  return routers;
}

double cost_of_routers(const CostProfile& theta, const std::vector<NodeId>& routers) {
  double cost = 0.0;
  for (NodeId r : routers) cost += theta.theta[r];
  return cost;
}

}  // namespace

LeastCostPaths least_cost_paths(const NetworkModel& net, const CostProfile& theta) {
  validate_profile(net, theta);
  const int n = net.n;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<char> done(n, 0);
  dist[net.source] = 0.0;

  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> frontier;
  frontier.push({0.0, net.source});
  while (!frontier.empty()) {
    auto [d, u] = frontier.top();
    frontier.pop();
    if (done[u]) continue;
    done[u] = 1;
    double w = forward_weight(net, theta, u);
    for (NodeId v : net.adj[u]) {
      if (!done[v] && d + w < dist[v]) {
        dist[v] = d + w;
        frontier.push({dist[v], v});
      }
    }
  }

  // Deterministic parents: smallest predecessor among the exact minimizers of
  // dist[u] + weight(u). Weights are strictly positive away from the source,
  // so the parent's dist is strictly smaller and the map is acyclic.
  std::vector<NodeId> parent(n, -1);
  for (NodeId v = 0; v < n; ++v) {
    if (v == net.source) continue;
    double best = kInf;
    NodeId best_u = -1;
    for (NodeId u : net.adj[v]) {
      double candidate = dist[u] + forward_weight(net, theta, u);
      if (candidate < best || (candidate == best && u < best_u)) {
        best = candidate;
        best_u = u;
      }
    }
    parent[v] = best_u;
  }
  return {std::move(dist), std::move(parent)};
}

Srbt build_srbt(const NetworkModel& net, const CostProfile& theta) {
  LeastCostPaths lcp = least_cost_paths(net, theta);
  Srbt srbt;
  srbt.parent = std::move(lcp.parent);
  srbt.routers = routers_of_tree(srbt.parent, net.source);
  srbt.tree_cost = cost_of_routers(theta, srbt.routers);
  return srbt;
}

Srbt optimal_broadcast_tree(const NetworkModel& net, const CostProfile& theta) {
  validate_profile(net, theta);
  const int n = net.n;
  if (n > 16) {
    throw InstanceTooLargeError("exact broadcast tree is limited to n <= 16, got " +
                                std::to_string(n));
  }

  std::vector<NodeId> candidates;  // non-source nodes, ascending
  for (NodeId v = 0; v < n; ++v) {
    if (v != net.source) candidates.push_back(v);
  }
  const int m = static_cast<int>(candidates.size());

  // A router set is feasible when {source} u R induces a connected subgraph
  // and every node is inside it or adjacent to it.
  auto feasible = [&](uint32_t mask) {
    std::vector<char> in_set(n, 0);
    in_set[net.source] = 1;
    for (int b = 0; b < m; ++b) {
      if (mask & (1u << b)) in_set[candidates[b]] = 1;
    }
    std::vector<char> seen(n, 0);
    std::queue<NodeId> queue;
    queue.push(net.source);
    seen[net.source] = 1;
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop();
      for (NodeId v : net.adj[u]) {
        if (in_set[v] && !seen[v]) {
          seen[v] = 1;
          queue.push(v);
        }
      }
    }
    for (NodeId v = 0; v < n; ++v) {
      if (in_set[v] && !seen[v]) return false;  // set itself disconnected
      if (in_set[v] || seen[v]) continue;
      bool covered = false;
      for (NodeId u : net.adj[v]) {
        if (in_set[u] && seen[u]) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
    }
    return true;
  };

  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<NodeId> best_set;
  bool found = false;
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    double cost = 0.0;
    std::vector<NodeId> set;
    for (int b = 0; b < m; ++b) {
      if (mask & (1u << b)) {
        set.push_back(candidates[b]);
        cost += theta.theta[candidates[b]];
      }
    }
    if (found && cost > best_cost) continue;
    if (!feasible(mask)) continue;
    if (!found || cost < best_cost ||
        (cost == best_cost && std::lexicographical_compare(set.begin(), set.end(),
                                                           best_set.begin(), best_set.end()))) {
      best_cost = cost;
      best_set = std::move(set);
      found = true;
    }
  }
  // Connectivity of the network guarantees the all-ones mask is feasible.

  // Build the tree by layered BFS through {source} u R*: each newly reached
  // node attaches to the smallest forwarder of the previous layer.
  std::vector<char> forwarder(n, 0);
  forwarder[net.source] = 1;
  for (NodeId r : best_set) forwarder[r] = 1;
  std::vector<NodeId> parent(n, -1);
  std::vector<char> visited(n, 0);
  visited[net.source] = 1;
  std::vector<NodeId> layer = {net.source};
  while (!layer.empty()) {
    std::vector<NodeId> assigned;
    for (NodeId u : layer) {
      for (NodeId v : net.adj[u]) {
        if (!visited[v] && parent[v] == -1) {
          parent[v] = u;
          assigned.push_back(v);
        }
      }
    }
    std::vector<NodeId> next;
    std::sort(assigned.begin(), assigned.end());
    assigned.erase(std::unique(assigned.begin(), assigned.end()), assigned.end());
    for (NodeId v : assigned) {
      visited[v] = 1;
      if (forwarder[v]) next.push_back(v);
    }
    layer = std::move(next);
  }

  Srbt srbt;
  srbt.parent = std::move(parent);
  srbt.routers = routers_of_tree(srbt.parent, net.source);
  srbt.tree_cost = cost_of_routers(theta, srbt.routers);
  return srbt;
}

Srbt build_tree(const NetworkModel& net, const CostProfile& theta, AllocationRule rule) {
  return rule == AllocationRule::kExactOptimal ? optimal_broadcast_tree(net, theta)
                                               : build_srbt(net, theta);
}

Allocation allocation_of(const Srbt& srbt, int n) {
  Allocation a;
  a.k.assign(n, 0);
  for (NodeId r : srbt.routers) a.k[r] = 1;
  return a;
}

std::vector<std::vector<NodeId>> srbt_children(const Srbt& srbt, int n) {
  std::vector<std::vector<NodeId>> children(n);
  for (NodeId v = 0; v < n; ++v) {
    if (srbt.parent[v] >= 0) children[srbt.parent[v]].push_back(v);
  }
  for (auto& c : children) std::sort(c.begin(), c.end());
  return children;
}

}  // namespace icb
