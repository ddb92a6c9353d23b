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

#include "icb/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "icb/rng.hpp"

namespace icb {

namespace {

constexpr double kProbTolerance = 1e-12;

std::vector<std::vector<NodeId>> adjacency_from_edges(
    int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

}  // namespace

TypeSpace TypeSpace::discrete(std::vector<double> values, std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size()) {
    throw InvalidTypeSpaceError("discrete type space needs matching nonempty values/probs");
  }
  double sum = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) {
      throw InvalidTypeSpaceError("type space values must be positive");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw InvalidTypeSpaceError("discrete values must be strictly increasing");
    }
    if (probs[i] < 0.0 || probs[i] > 1.0) {
      throw InvalidTypeSpaceError("probabilities must lie in [0, 1]");
    }
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > kProbTolerance) {
    throw InvalidTypeSpaceError("probabilities must sum to 1, got " + std::to_string(sum));
  }
  TypeSpace ts;
  ts.kind = Kind::kDiscrete;
  ts.values = std::move(values);
  ts.probs = std::move(probs);
  return ts;
}

TypeSpace TypeSpace::discrete_uniform(std::vector<double> values) {
  std::vector<double> probs(values.size(), 1.0 / static_cast<double>(values.size()));
  return discrete(std::move(values), std::move(probs));
}

TypeSpace TypeSpace::uniform_interval(double lo, double hi) {
  if (!(lo > 0.0) || !(lo < hi)) {
    throw InvalidTypeSpaceError("uniform interval needs 0 < lo < hi");
  }
  TypeSpace ts;
  ts.kind = Kind::kUniform;
  ts.lo = lo;
  ts.hi = hi;
  return ts;
}

double mean_cost(const TypeSpace& ts) {
  if (ts.kind == TypeSpace::Kind::kUniform) return (ts.lo + ts.hi) / 2.0;
  double mean = 0.0;
  for (size_t i = 0; i < ts.values.size(); ++i) mean += ts.values[i] * ts.probs[i];
  return mean;
}

bool NetworkModel::has_edge(NodeId u, NodeId v) const {
  const auto& nbrs = adj[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool is_connected(int n, const std::vector<std::vector<NodeId>>& adj, NodeId start) {
  std::vector<char> seen(n, 0);
  std::queue<NodeId> queue;
  queue.push(start);
  seen[start] = 1;
  int reached = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop();
    for (NodeId v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        queue.push(v);
      }
    }
  }
  return reached == n;
}

NetworkModel build_network(int n, std::vector<std::pair<NodeId, NodeId>> edges,
                           NodeId source, std::vector<TypeSpace> type_spaces) {
  if (n < 2) throw InputError("network needs at least 2 nodes");
  if (source < 0 || source >= n) throw InputError("source id out of range");
  if (static_cast<int>(type_spaces.size()) != n) {
    throw InvalidTypeSpaceError("need exactly one type space per node");
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw InputError("edge references invalid node id");
    if (u == v) throw SelfLoopError("self loop at node " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      throw DuplicateEdgeError("duplicate edge (" + std::to_string(u + 1) + ", " +
                               std::to_string(v + 1) + ")");
    }
  }
  std::sort(edges.begin(), edges.end());

  NetworkModel net;
  net.n = n;
  net.source = source;
  net.edges = std::move(edges);
  net.adj = adjacency_from_edges(n, net.edges);
  net.type_spaces = std::move(type_spaces);
  if (!is_connected(n, net.adj, source)) {
    throw DisconnectedGraphError("graph is not connected");
  }
  return net;
}

std::pair<NetworkModel, CostProfile> random_network(int n, double edge_density,
                                                    double cost_lo, double cost_hi,
                                                    uint64_t rng_seed) {
  if (n < 2) throw InputError("random network needs n >= 2");
  if (!(edge_density > 0.0) || edge_density > 1.0) {
    throw InputError("edge density must lie in (0, 1]");
  }
  if (!(cost_lo > 0.0) || !(cost_lo < cost_hi)) throw InputError("need 0 < cost_lo < cost_hi");

  Rng rng(rng_seed);
  constexpr int kConnectRetries = 10;
  std::set<std::pair<NodeId, NodeId>> edge_set;
  bool connected = false;
  for (int attempt = 0; attempt < kConnectRetries && !connected; ++attempt) {
    edge_set.clear();
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (rng.next_double() < edge_density) edge_set.insert({u, v});
      }
    }
    std::vector<std::pair<NodeId, NodeId>> edges(edge_set.begin(), edge_set.end());
    connected = is_connected(n, adjacency_from_edges(n, edges), 0);
  }
  if (!connected) {
    // Augment the last draw with a random spanning tree; the result is
    // connected by construction, so GenerationFailed cannot occur.
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      std::swap(order[i], order[rng.next_below(static_cast<uint64_t>(i) + 1)]);
    }
    for (int i = 1; i < n; ++i) {
      NodeId u = order[i];
      NodeId v = order[rng.next_below(static_cast<uint64_t>(i))];
      edge_set.insert({std::min(u, v), std::max(u, v)});
    }
  }

  std::vector<TypeSpace> spaces;
  spaces.reserve(n);
  for (int i = 0; i < n; ++i) spaces.push_back(TypeSpace::uniform_interval(cost_lo, cost_hi));

  CostProfile profile;
  profile.theta.reserve(n);
  for (int i = 0; i < n; ++i) profile.theta.push_back(rng.uniform(cost_lo, cost_hi));

  std::vector<std::pair<NodeId, NodeId>> edges(edge_set.begin(), edge_set.end());
  NetworkModel net = build_network(n, std::move(edges), 0, std::move(spaces));
  return {std::move(net), std::move(profile)};
}

std::pair<NetworkModel, CostProfile> random_discrete_network(
    int n, int max_values, double cost_lo, double cost_hi, double edge_density,
    uint64_t rng_seed) {
  if (max_values < 2) throw InputError("need at least 2 values per type space");
  auto [net, profile] = random_network(n, edge_density, cost_lo, cost_hi, rng_seed);
  Rng rng(mix_seed({rng_seed, 0x7159u}));
  for (int i = 0; i < n; ++i) {
    int k = 2 + static_cast<int>(rng.next_below(static_cast<uint64_t>(max_values - 1)));
    std::set<double> values;
    while (static_cast<int>(values.size()) < k) values.insert(rng.uniform(cost_lo, cost_hi));
    std::vector<double> probs(k);
    double sum = 0.0;
    for (double& p : probs) {
      p = 0.1 + rng.next_double();
      sum += p;
    }
    for (double& p : probs) p /= sum;
    // Renormalization leaves the sum within 1e-12 of 1; nudge the largest
    // entry so the canonical-form validation is exact.
    double drift = 1.0 - std::accumulate(probs.begin(), probs.end(), 0.0);
    *std::max_element(probs.begin(), probs.end()) += drift;
    net.type_spaces[i] =
        TypeSpace::discrete(std::vector<double>(values.begin(), values.end()), probs);
    // Resample the true cost from the discrete prior.
    double point = rng.next_double();
    double cum = 0.0;
    profile.theta[i] = net.type_spaces[i].values.back();
    for (int j = 0; j < k; ++j) {
      cum += net.type_spaces[i].probs[j];
      if (point < cum) {
        profile.theta[i] = net.type_spaces[i].values[j];
        break;
      }
    }
  }
  return {std::move(net), std::move(profile)};
}

bool is_biconnected(const NetworkModel& net) {
  if (net.n < 3) return false;
  // Articulation points via DFS lowpoints (iterative).
  const int n = net.n;
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), child_count(n, 0);
  std::vector<size_t> next_edge(n, 0);
  int timer = 0;
  std::vector<NodeId> stack;
  stack.push_back(0);
  disc[0] = low[0] = timer++;
  while (!stack.empty()) {
    NodeId u = stack.back();
    if (next_edge[u] < net.adj[u].size()) {
      NodeId v = net.adj[u][next_edge[u]++];
      if (disc[v] == -1) {
        parent[v] = u;
        ++child_count[u];
        disc[v] = low[v] = timer++;
        stack.push_back(v);
      } else if (v != parent[u]) {
        low[u] = std::min(low[u], disc[v]);
      }
    } else {
      stack.pop_back();
      if (parent[u] != -1) {
        NodeId p = parent[u];
        low[p] = std::min(low[p], low[u]);
        if (parent[p] != -1 && low[u] >= disc[p]) return false;  // p cuts
      }
    }
  }
  if (child_count[0] > 1) return false;  // root cuts
  return timer == n;                     // connected
}

void validate_profile(const NetworkModel& net, const CostProfile& profile) {
  if (static_cast<int>(profile.theta.size()) != net.n) {
    throw LengthMismatchError("cost profile has " + std::to_string(profile.theta.size()) +
                              " entries, network has " + std::to_string(net.n) + " nodes");
  }
  for (double t : profile.theta) {
    if (!(t > 0.0)) throw InputError("announced costs must be positive");
  }
}

}  // namespace icb
