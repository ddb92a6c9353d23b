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

#ifndef ICB_PAYMENTS_HPP_
#define ICB_PAYMENTS_HPP_

#include <string>
#include <vector>

#include "icb/allocation.hpp"
#include "icb/graph_model.hpp"

namespace icb {

enum class Mechanism { kBicB, kDsicB };

std::string mechanism_name(Mechanism m);

// Result of running a mechanism: the allocation plus one signed payment per
// node. t_i > 0 means node i receives, t_i < 0 means node i pays. For the
// DSIC-B baseline the gross received/paid legs are kept as well (payments is
// their difference); both are empty for BIC-B.
struct Outcome {
  Mechanism mechanism = Mechanism::kBicB;
  Allocation allocation;
  std::vector<double> payments;
  std::vector<double> received;  // DSIC-B only
  std::vector<double> paid;      // DSIC-B only

  double budget_sum() const;
};

// xi_j = sum over routers l != j of the prior mean cost of l. Exact closed
// form from independence; no sampling. routers must exclude the source.
struct ExpectedExternality {
  std::vector<double> xi;
};

ExpectedExternality expected_externalities(const NetworkModel& net,
                                           const std::vector<NodeId>& routers);

// BIC-B payment vector for a router set. Closed form: with S the sum of
// router prior means, a router i gets (n*E[theta_i] - S)/(n-1) and every
// other node pays S/(n-1). Equal to bicb_payments_direct within float
// rounding; the closed form is primary so that all non-router payments are
// bit-identical.
std::vector<double> bicb_payments(const NetworkModel& net,
                                  const std::vector<NodeId>& routers);

// Same payments via the expected-externality double sum,
// t_i = (1/(n-1)) * sum_{j != i} xi_j - xi_i. Kept as an independent route
// and cross-checked against the closed form to 1e-9.
std::vector<double> bicb_payments_direct(const NetworkModel& net,
                                         const std::vector<NodeId>& routers);

// Realized utility of router i under the announced profile: it forwards at
// its announced cost, is credited the common non-router charge, and receives
// its payment: -theta_hat_i - t_m + t_i. Equals
// (n*E[theta_i] - (n-1)*theta_hat_i)/(n-1). Throws NotARouterError.
double router_utility(const NetworkModel& net, const std::vector<NodeId>& routers,
                      const CostProfile& announced, NodeId i);

// Announced cost above which router i's utility turns negative:
// (n/(n-1)) * E[theta_i].
double ir_threshold(const NetworkModel& net, NodeId i);

// DSIC-B baseline (VCG-style reconstruction). Each node j whose SRBT parent
// p is a router pays the Clarke amount
//   pay_j = theta_hat_p + d_{G\p}(s, j) - d_G(s, j)
// where d is the least-intermediate-cost path distance; nodes attached
// directly to the source pay nothing. A router forwards once and is
// compensated once, with the largest Clarke amount among its paying
// children, so collected charges can exceed disbursements and the budget sum
// is <= 0 (reported as-is). Requires a biconnected graph; throws
// NotBiconnectedError otherwise.
struct DsicbPayments {
  std::vector<double> received;
  std::vector<double> paid;
};

DsicbPayments dsicb_payments(const NetworkModel& net, const CostProfile& announced,
                             const Srbt& srbt);

Outcome bicb_outcome(const NetworkModel& net, const Srbt& srbt);
Outcome dsicb_outcome(const NetworkModel& net, const CostProfile& announced,
                      const Srbt& srbt);
Outcome mechanism_outcome(const NetworkModel& net, const CostProfile& announced,
                          const Srbt& srbt, Mechanism mechanism);

// Brute-force dominant-strategy truthfulness over a small discrete instance:
// for every node, true type, misreport and profile of the other nodes'
// announcements, truthful reporting must be at least as good. Bounded to
// n <= 6 and at most 4 values per type space (InstanceTooLargeError).
struct TruthfulnessResult {
  bool truthful = true;
  NodeId node = -1;
  double true_type = 0.0;
  double misreport = 0.0;
  double truthful_utility = 0.0;
  double misreport_utility = 0.0;
  std::vector<double> others_announcement;  // full profile with the misreport
};

TruthfulnessResult dominant_strategy_truthful(const NetworkModel& net,
                                              Mechanism mechanism,
                                              AllocationRule rule = AllocationRule::kLcpTree);

// DSIC-B sanity harness: true iff the reconstruction is dominant-strategy
// truthful on the instance. Accepts non-biconnected inputs only in the
// trivial case where every node neighbors the source (all payments are then
// zero); otherwise NotBiconnectedError propagates.
bool dsicb_truthfulness_check(const NetworkModel& net);

}  // namespace icb

#endif  // ICB_PAYMENTS_HPP_
