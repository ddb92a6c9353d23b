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

#ifndef ICB_VERIFICATION_HPP_
#define ICB_VERIFICATION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icb/allocation.hpp"
#include "icb/graph_model.hpp"
#include "icb/payments.hpp"

namespace icb {

// Replayable counterexample for a failed check: a human-readable description
// plus the raw numbers (seed, profile, node, misreport, utilities) needed to
// reproduce it.
struct Witness {
  std::string description;
  std::map<std::string, double> numbers;
  std::vector<double> profile;
};

struct PropertyReport {
  std::string property_name;
  bool passed = true;
  long instances_checked = 0;
  std::optional<Witness> witness;
};

// |sum of BIC-B payments| <= 1e-9 for the given router set.
PropertyReport check_budget_balance(const NetworkModel& net,
                                    const std::vector<NodeId>& routers);

// All non-router payments equal, and strictly negative when R is nonempty.
PropertyReport check_nonrouter_payments(const NetworkModel& net,
                                        const std::vector<NodeId>& routers);

// Brute-force Bayesian incentive compatibility on a small discrete instance
// (n <= 5, at most 3 values per type space): for every node, true type and
// misreport, the expected utility of truth over all others' type realizations
// (others truthful, allocation recomputed per announced profile) must be at
// least the misreport's minus 1e-9. Utility is -theta_i * k_i + t_i with the
// true cost and the announced allocation and payments. The witness is the
// first failing (node, true type, misreport) in lexicographic order.
PropertyReport check_bayesian_ic(const NetworkModel& net, AllocationRule rule);

// Both directions of the ex-post IR condition: every router's utility is
// nonnegative exactly when its announced cost is at most (n/(n-1)) times its
// prior mean (1e-9 slack at the boundary).
PropertyReport check_expost_ir(const NetworkModel& net,
                               const std::vector<NodeId>& routers,
                               const CostProfile& announced);

// Seeded multi-instance suites built on the single-instance checks. Each
// aggregates pass/fail over `instances` random instances with node counts
// cycling through 5..40 (small discrete instances for the incentive suites).
PropertyReport run_budget_balance_suite(int instances, uint64_t seed);
PropertyReport run_nonrouter_suite(int instances, uint64_t seed);
PropertyReport run_expost_ir_suite(int triples, uint64_t seed);
PropertyReport run_bayesian_ic_suite(int instances, uint64_t seed, AllocationRule rule);
PropertyReport run_dsic_suite(int instances, uint64_t seed);

}  // namespace icb

#endif  // ICB_VERIFICATION_HPP_
