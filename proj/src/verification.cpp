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

#include "icb/verification.hpp"

#include <cmath>
#include <sstream>

#include "icb/rng.hpp"

namespace icb {

namespace {

constexpr double kMoneyTolerance = 1e-9;

Witness make_witness(const std::string& description) {
  Witness w;
  w.description = description;
  return w;
}

std::string node_label(NodeId i) { return std::to_string(i + 1); }

}  // namespace

PropertyReport check_budget_balance(const NetworkModel& net,
                                    const std::vector<NodeId>& routers) {
  PropertyReport report;
  report.property_name = "budget_balance";
  report.instances_checked = 1;
  std::vector<double> t = bicb_payments(net, routers);
  double sum = 0.0;
  for (double x : t) sum += x;
  if (std::abs(sum) > kMoneyTolerance) {
    report.passed = false;
    Witness w = make_witness("payment sum " + std::to_string(sum) + " exceeds tolerance");
    w.numbers["sum"] = sum;
    report.witness = w;
  }
  return report;
}

PropertyReport check_nonrouter_payments(const NetworkModel& net,
                                        const std::vector<NodeId>& routers) {
  PropertyReport report;
  report.property_name = "nonrouter_payments";
  report.instances_checked = 1;
  std::vector<double> t = bicb_payments(net, routers);
  std::vector<char> is_router(net.n, 0);
  for (NodeId r : routers) is_router[r] = 1;

  bool first = true;
  double common = 0.0;
  for (NodeId i = 0; i < net.n; ++i) {
    if (is_router[i]) continue;
    if (first) {
      common = t[i];
      first = false;
      continue;
    }
    if (t[i] != common) {  // closed form makes these bit-identical
      report.passed = false;
      Witness w = make_witness("non-router payments differ: node " + node_label(i) +
                               " pays " + std::to_string(-t[i]) + ", expected " +
                               std::to_string(-common));
      w.numbers["node"] = i + 1;
      w.numbers["payment"] = t[i];
      w.numbers["common"] = common;
      report.witness = w;
      return report;
    }
  }
  if (!routers.empty() && !(common < 0.0)) {
    report.passed = false;
    Witness w = make_witness("non-router payment is not strictly negative");
    w.numbers["payment"] = common;
    report.witness = w;
  }
  return report;
}

PropertyReport check_bayesian_ic(const NetworkModel& net, AllocationRule rule) {
  PropertyReport report;
  report.property_name = rule == AllocationRule::kExactOptimal
                             ? "bayesian_ic_exact_optimal"
                             : "bayesian_ic_lcp_tree";
  if (net.n > 5) throw InstanceTooLargeError("Bayesian IC enumeration is limited to n <= 5");
  std::vector<int> sizes;
  for (const auto& ts : net.type_spaces) {
    if (ts.kind != TypeSpace::Kind::kDiscrete || ts.values.size() > 3) {
      throw InstanceTooLargeError(
          "Bayesian IC enumeration needs discrete type spaces with <= 3 values");
    }
    sizes.push_back(static_cast<int>(ts.values.size()));
  }

  // Cache (allocation, payments) for every announced profile.
  std::vector<long> strides(net.n, 1);
  long total = 1;
  for (int i = net.n - 1; i >= 0; --i) {
    strides[i] = total;
    total *= sizes[i];
  }
  std::vector<std::vector<int>> k_of(total);
  std::vector<std::vector<double>> t_of(total);
  std::vector<double> prob_of(total);
  {
    CostProfile announced;
    announced.theta.assign(net.n, 0.0);
    std::vector<int> index(net.n, 0);
    for (long code = 0; code < total; ++code) {
      double prob = 1.0;
      for (int i = 0; i < net.n; ++i) {
        announced.theta[i] = net.type_spaces[i].values[index[i]];
        prob *= net.type_spaces[i].probs[index[i]];
      }
      Srbt srbt = build_tree(net, announced, rule);
      k_of[code] = allocation_of(srbt, net.n).k;
      t_of[code] = bicb_payments(net, srbt.routers);
      prob_of[code] = prob;
      for (int i = net.n - 1; i >= 0; --i) {
        if (++index[i] < sizes[i]) break;
        index[i] = 0;
      }
    }
  }

  report.instances_checked = total;
  constexpr double kSlack = 1e-9;
  for (NodeId i = 0; i < net.n; ++i) {
    const long stride = strides[i];
    const int size_i = sizes[i];
    // Expected utility of reporting rep_idx while the true type is true_idx.
    std::vector<std::vector<double>> eu(size_i, std::vector<double>(size_i, 0.0));
    for (long code = 0; code < total; ++code) {
      if ((code / stride) % size_i != 0) continue;
      // Probability of the others' profile.
      double p_others = 1.0;
      for (int v = 0; v < net.n; ++v) {
        if (v == i) continue;
        int idx = static_cast<int>((code / strides[v]) % sizes[v]);
        p_others *= net.type_spaces[v].probs[idx];
      }
      for (int rep_idx = 0; rep_idx < size_i; ++rep_idx) {
        const long rep_code = code + stride * rep_idx;
        const double t_i = t_of[rep_code][i];
        const int k_i = k_of[rep_code][i];
        for (int true_idx = 0; true_idx < size_i; ++true_idx) {
          const double true_cost = net.type_spaces[i].values[true_idx];
          eu[true_idx][rep_idx] += p_others * (-true_cost * k_i + t_i);
        }
      }
    }
    for (int true_idx = 0; true_idx < size_i; ++true_idx) {
      for (int rep_idx = 0; rep_idx < size_i; ++rep_idx) {
        if (rep_idx == true_idx) continue;
        if (eu[true_idx][true_idx] < eu[true_idx][rep_idx] - kSlack) {
          report.passed = false;
          std::ostringstream oss;
          oss << "node " << node_label(i) << " with true cost "
              << net.type_spaces[i].values[true_idx] << " gains by announcing "
              << net.type_spaces[i].values[rep_idx] << ": expected utility "
              << eu[true_idx][rep_idx] << " > " << eu[true_idx][true_idx];
          Witness w = make_witness(oss.str());
          w.numbers["node"] = i + 1;
          w.numbers["true_type"] = net.type_spaces[i].values[true_idx];
          w.numbers["misreport"] = net.type_spaces[i].values[rep_idx];
          w.numbers["eu_truth"] = eu[true_idx][true_idx];
          w.numbers["eu_misreport"] = eu[true_idx][rep_idx];
          report.witness = w;
          return report;
        }
      }
    }
  }
  return report;
}

PropertyReport check_expost_ir(const NetworkModel& net,
                               const std::vector<NodeId>& routers,
                               const CostProfile& announced) {
  PropertyReport report;
  report.property_name = "expost_ir_iff";
  report.instances_checked = static_cast<long>(routers.size());
  for (NodeId i : routers) {
    const double u = router_utility(net, routers, announced, i);
    const double threshold = ir_threshold(net, i);
    const bool predicate = announced.theta[i] <= threshold;
    const bool ok = predicate ? u >= -kMoneyTolerance : u <= kMoneyTolerance;
    if (!ok) {
      report.passed = false;
      std::ostringstream oss;
      oss << "router " << node_label(i) << ": announced " << announced.theta[i]
          << (predicate ? " <= " : " > ") << "threshold " << threshold
          << " but utility is " << u;
      Witness w = make_witness(oss.str());
      w.numbers["node"] = i + 1;
      w.numbers["announced"] = announced.theta[i];
      w.numbers["threshold"] = threshold;
      w.numbers["utility"] = u;
      w.profile = announced.theta;
      report.witness = w;
      return report;
    }
  }
  return report;
}

namespace {

// Random instance sizes for the bulk suites, cycling the simulated range.
int suite_n(int index) {
  static const int kSizes[] = {5, 10, 15, 20, 25, 30, 35, 40};
  return kSizes[index % 8];
}

}  // namespace

PropertyReport run_budget_balance_suite(int instances, uint64_t seed) {
  PropertyReport total;
  total.property_name = "budget_balance";
  for (int i = 0; i < instances; ++i) {
    uint64_t instance_seed = mix_seed({seed, 0xbb, static_cast<uint64_t>(i)});
    auto [net, profile] = random_network(suite_n(i), 0.3, 1.0, 50.0, instance_seed);
    Srbt srbt = build_srbt(net, profile);
    PropertyReport r = check_budget_balance(net, srbt.routers);
    total.instances_checked += 1;
    if (!r.passed) {
      total.passed = false;
      total.witness = r.witness;
      total.witness->numbers["seed"] = static_cast<double>(instance_seed);
      return total;
    }
  }
  return total;
}

PropertyReport run_nonrouter_suite(int instances, uint64_t seed) {
  PropertyReport total;
  total.property_name = "nonrouter_payments";
  for (int i = 0; i < instances; ++i) {
    uint64_t instance_seed = mix_seed({seed, 0x47, static_cast<uint64_t>(i)});
    auto [net, profile] = random_network(suite_n(i), 0.3, 1.0, 50.0, instance_seed);
    Srbt srbt = build_srbt(net, profile);
    PropertyReport r = check_nonrouter_payments(net, srbt.routers);
    total.instances_checked += 1;
    if (!r.passed) {
      total.passed = false;
      total.witness = r.witness;
      total.witness->numbers["seed"] = static_cast<double>(instance_seed);
      return total;
    }
  }
  return total;
}

PropertyReport run_expost_ir_suite(int triples, uint64_t seed) {
  PropertyReport total;
  total.property_name = "expost_ir_iff";
  int produced = 0;
  for (int i = 0; produced < triples && i < 20 * triples + 100; ++i) {
    uint64_t instance_seed = mix_seed({seed, 0x19, static_cast<uint64_t>(i)});
    auto [net, profile] = random_network(suite_n(i), 0.3, 1.0, 50.0, instance_seed);
    Srbt srbt = build_srbt(net, profile);
    if (srbt.routers.empty()) continue;
    Rng rng(mix_seed({instance_seed, 0x1}));
    NodeId router = srbt.routers[rng.next_below(srbt.routers.size())];
    // Announce a random value, then both sides of the threshold and the
    // boundary itself.
    const double threshold = ir_threshold(net, router);
    const double announce_values[] = {rng.uniform(1.0, 50.0), threshold - 1e-6,
                                      threshold + 1e-6, threshold};
    for (double v : announce_values) {
      CostProfile announced = profile;
      announced.theta[router] = v;
      PropertyReport r = check_expost_ir(net, srbt.routers, announced);
      total.instances_checked += 1;
      if (!r.passed) {
        total.passed = false;
        total.witness = r.witness;
        total.witness->numbers["seed"] = static_cast<double>(instance_seed);
        return total;
      }
      // At the exact boundary the utility must vanish.
      if (v == threshold) {
        double u = router_utility(net, srbt.routers, announced, router);
        if (std::abs(u) > 1e-6) {
          total.passed = false;
          Witness w = make_witness("boundary utility " + std::to_string(u) +
                                   " is not zero");
          w.numbers["seed"] = static_cast<double>(instance_seed);
          w.numbers["node"] = router + 1;
          w.numbers["utility"] = u;
          total.witness = w;
          return total;
        }
      }
    }
    ++produced;
  }
  return total;
}

PropertyReport run_bayesian_ic_suite(int instances, uint64_t seed, AllocationRule rule) {
  PropertyReport total;
  total.property_name = rule == AllocationRule::kExactOptimal
                            ? "bayesian_ic_exact_optimal"
                            : "bayesian_ic_lcp_tree";
  for (int i = 0; i < instances; ++i) {
    uint64_t instance_seed = mix_seed({seed, 0xb1c, static_cast<uint64_t>(i)});
    int n = 3 + static_cast<int>(instance_seed % 3);  // 3..5 nodes
    auto [net, profile] = random_discrete_network(n, 3, 1.0, 50.0, 0.5, instance_seed);
    PropertyReport r = check_bayesian_ic(net, rule);
    total.instances_checked += 1;
    if (!r.passed) {
      total.passed = false;
      total.witness = r.witness;
      total.witness->numbers["seed"] = static_cast<double>(instance_seed);
      total.witness->numbers["n"] = n;
      return total;
    }
  }
  return total;
}

PropertyReport run_dsic_suite(int instances, uint64_t seed) {
  PropertyReport total;
  total.property_name = "dsic_truthfulness";
  int produced = 0;
  for (int i = 0; produced < instances && i < 200 * instances + 1000; ++i) {
    uint64_t instance_seed = mix_seed({seed, 0xd51c, static_cast<uint64_t>(i)});
    int n = 4 + static_cast<int>(instance_seed % 3);  // 4..6 nodes
    auto [net, profile] = random_discrete_network(n, 3, 1.0, 50.0, 0.6, instance_seed);
    if (!is_biconnected(net)) continue;
    ++produced;
    total.instances_checked += 1;
    TruthfulnessResult r = dominant_strategy_truthful(net, Mechanism::kDsicB);
    if (!r.truthful) {
      total.passed = false;
      std::ostringstream oss;
      oss << "node " << node_label(r.node) << " with true cost " << r.true_type
          << " gains by announcing " << r.misreport;
      Witness w = make_witness(oss.str());
      w.numbers["seed"] = static_cast<double>(instance_seed);
      w.numbers["node"] = r.node + 1;
      w.numbers["true_type"] = r.true_type;
      w.numbers["misreport"] = r.misreport;
      w.numbers["u_truth"] = r.truthful_utility;
      w.numbers["u_misreport"] = r.misreport_utility;
      w.profile = r.others_announcement;
      total.witness = w;
      return total;
    }
  }
  return total;
}

}  // namespace icb
