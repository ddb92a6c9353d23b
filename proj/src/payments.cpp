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

#include "icb/payments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>

namespace icb {

namespace {

void validate_routers(const NetworkModel& net, const std::vector<NodeId>& routers) {
  for (NodeId r : routers) {
    if (r < 0 || r >= net.n) throw InputError("router id out of range");
    if (r == net.source) throw InputError("the source cannot be a router");
  }
}

bool contains(const std::vector<NodeId>& sorted, NodeId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

// Dijkstra over intermediate-node costs with one node removed; used for the
// Clarke detour terms. Unreachable nodes keep +inf.
std::vector<double> dist_without(const NetworkModel& net, const CostProfile& theta,
                                 NodeId removed) {
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
    double w = u == net.source ? 0.0 : theta.theta[u];
    for (NodeId v : net.adj[u]) {
      if (v == removed || done[v]) continue;
      if (d + w < dist[v]) {
        dist[v] = d + w;
        frontier.push({dist[v], v});
      }
    }
  }
  return dist;
}

struct ProfileOutcome {
  std::vector<int> k;
  std::vector<double> t_net;
};

// Enumerates all announced profiles of a discrete instance and caches the
// outcome of the selected mechanism for each.
class ProfileTable {
 public:
  ProfileTable(const NetworkModel& net, Mechanism mechanism, AllocationRule rule)
      : net_(net) {
    sizes_.reserve(net.n);
    for (const auto& ts : net.type_spaces) {
      if (ts.kind != TypeSpace::Kind::kDiscrete) {
        throw InstanceTooLargeError("truthfulness enumeration needs discrete type spaces");
      }
      sizes_.push_back(static_cast<int>(ts.values.size()));
    }
    strides_.assign(net.n, 1);
    total_ = 1;
    for (int i = net.n - 1; i >= 0; --i) {
      strides_[i] = total_;
      total_ *= sizes_[i];
    }
    outcomes_.resize(total_);
    CostProfile announced;
    announced.theta.assign(net.n, 0.0);
    std::vector<int> index(net.n, 0);
    for (long code = 0; code < total_; ++code) {
      for (int i = 0; i < net.n; ++i) {
        announced.theta[i] = net.type_spaces[i].values[index[i]];
      }
      Srbt srbt = build_tree(net, announced, rule);
      ProfileOutcome& out = outcomes_[code];
      out.k = allocation_of(srbt, net.n).k;
      if (mechanism == Mechanism::kBicB) {
        out.t_net = bicb_payments(net, srbt.routers);
      } else {
        DsicbPayments p = dsicb_payments(net, announced, srbt);
        out.t_net.resize(net.n);
        for (int i = 0; i < net.n; ++i) out.t_net[i] = p.received[i] - p.paid[i];
      }
      // Advance the mixed-radix counter.
      for (int i = net.n - 1; i >= 0; --i) {
        if (++index[i] < sizes_[i]) break;
        index[i] = 0;
      }
    }
  }

  long total() const { return total_; }
  int size_of(int node) const { return sizes_[node]; }
  long stride_of(int node) const { return strides_[node]; }
  const ProfileOutcome& at(long code) const { return outcomes_[code]; }
  double value(int node, int idx) const { return net_.type_spaces[node].values[idx]; }

 private:
  const NetworkModel& net_;
  std::vector<int> sizes_;
  std::vector<long> strides_;
  long total_ = 0;
  std::vector<ProfileOutcome> outcomes_;
};

}  // namespace

std::string mechanism_name(Mechanism m) {
  return m == Mechanism::kBicB ? "bicb" : "dsicb";
}

double Outcome::budget_sum() const {
  double sum = 0.0;
  for (double t : payments) sum += t;
  return sum;
}

ExpectedExternality expected_externalities(const NetworkModel& net,
                                           const std::vector<NodeId>& routers) {
  validate_routers(net, routers);
  ExpectedExternality ee;
  ee.xi.assign(net.n, 0.0);
  for (NodeId j = 0; j < net.n; ++j) {
    double sum = 0.0;
    for (NodeId l : routers) {
      if (l != j) sum += mean_cost(net.type_spaces[l]);
    }
    ee.xi[j] = sum;
  }
  return ee;
}

std::vector<double> bicb_payments(const NetworkModel& net,
                                  const std::vector<NodeId>& routers) {
  validate_routers(net, routers);
  const int n = net.n;
  std::vector<double> t(n, 0.0);
  if (routers.empty()) return t;
  double router_mean_sum = 0.0;
  for (NodeId l : routers) router_mean_sum += mean_cost(net.type_spaces[l]);
  const double nonrouter_charge = router_mean_sum / (n - 1);
  for (NodeId i = 0; i < n; ++i) {
    if (contains(routers, i)) {
      t[i] = (n * mean_cost(net.type_spaces[i]) - router_mean_sum) / (n - 1);
    } else {
      t[i] = -nonrouter_charge;
    }
  }
  return t;
}

std::vector<double> bicb_payments_direct(const NetworkModel& net,
                                         const std::vector<NodeId>& routers) {
  ExpectedExternality ee = expected_externalities(net, routers);
  const int n = net.n;
  std::vector<double> t(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    double sum_others = 0.0;
    for (NodeId j = 0; j < n; ++j) {
      if (j != i) sum_others += ee.xi[j];
    }
    t[i] = sum_others / (n - 1) - ee.xi[i];
  }
  return t;
}

double router_utility(const NetworkModel& net, const std::vector<NodeId>& routers,
                      const CostProfile& announced, NodeId i) {
  validate_profile(net, announced);
  if (!contains(routers, i)) {
    throw NotARouterError("node " + std::to_string(i + 1) + " is not a router");
  }
  std::vector<double> t = bicb_payments(net, routers);
  // The source never routes, so its payment is the common non-router charge.
  const double t_m = t[net.source];
  return -announced.theta[i] - t_m + t[i];
}

double ir_threshold(const NetworkModel& net, NodeId i) {
  if (i < 0 || i >= net.n) throw InputError("node id out of range");
  return (static_cast<double>(net.n) / (net.n - 1)) * mean_cost(net.type_spaces[i]);
}

DsicbPayments dsicb_payments(const NetworkModel& net, const CostProfile& announced,
                             const Srbt& srbt) {
  validate_profile(net, announced);
  if (!is_biconnected(net)) {
    throw NotBiconnectedError("DSIC-B requires a biconnected network");
  }
  const int n = net.n;
  LeastCostPaths lcp = least_cost_paths(net, announced);
  DsicbPayments result;
  result.received.assign(n, 0.0);
  result.paid.assign(n, 0.0);
  std::map<NodeId, std::vector<double>> detour_cache;
  for (NodeId j = 0; j < n; ++j) {
    if (j == net.source) continue;
    NodeId p = srbt.parent[j];
    if (p == net.source) continue;  // no intermediary to compensate
    auto it = detour_cache.find(p);
    if (it == detour_cache.end()) {
      it = detour_cache.emplace(p, dist_without(net, announced, p)).first;
    }
    const double pay = announced.theta[p] + it->second[j] - lcp.dist[j];
    result.paid[j] = pay;
    // The router forwards once and is compensated once: it keeps the
    // largest Clarke amount among its paying children, so the collected
    // charges can exceed what is disbursed (the budget gap of this scheme).
    result.received[p] = std::max(result.received[p], pay);
  }
  return result;
}

Outcome bicb_outcome(const NetworkModel& net, const Srbt& srbt) {
  Outcome out;
  out.mechanism = Mechanism::kBicB;
  out.allocation = allocation_of(srbt, net.n);
  out.payments = bicb_payments(net, srbt.routers);
  return out;
}

Outcome dsicb_outcome(const NetworkModel& net, const CostProfile& announced,
                      const Srbt& srbt) {
  Outcome out;
  out.mechanism = Mechanism::kDsicB;
  out.allocation = allocation_of(srbt, net.n);
  DsicbPayments p = dsicb_payments(net, announced, srbt);
  out.payments.resize(net.n);
  for (int i = 0; i < net.n; ++i) out.payments[i] = p.received[i] - p.paid[i];
  out.received = std::move(p.received);
  out.paid = std::move(p.paid);
  return out;
}

Outcome mechanism_outcome(const NetworkModel& net, const CostProfile& announced,
                          const Srbt& srbt, Mechanism mechanism) {
  return mechanism == Mechanism::kBicB ? bicb_outcome(net, srbt)
                                       : dsicb_outcome(net, announced, srbt);
}

TruthfulnessResult dominant_strategy_truthful(const NetworkModel& net,
                                              Mechanism mechanism, AllocationRule rule) {
  if (net.n > 6) throw InstanceTooLargeError("truthfulness enumeration is limited to n <= 6");
  for (const auto& ts : net.type_spaces) {
    if (ts.kind != TypeSpace::Kind::kDiscrete || ts.values.size() > 4) {
      throw InstanceTooLargeError(
          "truthfulness enumeration needs discrete type spaces with <= 4 values");
    }
  }
  ProfileTable table(net, mechanism, rule);

  TruthfulnessResult result;
  constexpr double kSlack = 1e-9;
  for (NodeId i = 0; i < net.n; ++i) {
    const long stride = table.stride_of(i);
    const int size_i = table.size_of(i);
    // Walk every profile of the other nodes by enumerating all full profiles
    // whose i-th coordinate is 0 and substituting reports.
    for (long code = 0; code < table.total(); ++code) {
      if ((code / stride) % size_i != 0) continue;
      for (int true_idx = 0; true_idx < size_i; ++true_idx) {
        const double true_cost = table.value(i, true_idx);
        const ProfileOutcome& truth = table.at(code + stride * true_idx);
        const double u_truth = -true_cost * truth.k[i] + truth.t_net[i];
        for (int rep_idx = 0; rep_idx < size_i; ++rep_idx) {
          if (rep_idx == true_idx) continue;
          const ProfileOutcome& lie = table.at(code + stride * rep_idx);
          const double u_lie = -true_cost * lie.k[i] + lie.t_net[i];
          if (u_truth < u_lie - kSlack) {
            result.truthful = false;
            result.node = i;
            result.true_type = true_cost;
            result.misreport = table.value(i, rep_idx);
            result.truthful_utility = u_truth;
            result.misreport_utility = u_lie;
            result.others_announcement.assign(net.n, 0.0);
            long rest = code + stride * rep_idx;
            for (int v = 0; v < net.n; ++v) {
              int idx = static_cast<int>((rest / table.stride_of(v)) % table.size_of(v));
              result.others_announcement[v] = net.type_spaces[v].values[idx];
            }
            return result;
          }
        }
      }
    }
  }
  return result;
}

bool dsicb_truthfulness_check(const NetworkModel& net) {
  if (!is_biconnected(net)) {
    // A source that reaches everyone in one hop never induces payments, so
    // truthfulness holds vacuously even off the biconnected domain.
    const auto& nbrs = net.adj[net.source];
    if (static_cast<int>(nbrs.size()) == net.n - 1) return true;
    throw NotBiconnectedError("DSIC-B truthfulness check requires a biconnected network");
  }
  return dominant_strategy_truthful(net, Mechanism::kDsicB).truthful;
}

}  // namespace icb
