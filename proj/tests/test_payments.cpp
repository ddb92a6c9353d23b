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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "icb/allocation.hpp"
#include "icb/payments.hpp"
#include "icb/rng.hpp"
#include "oracles.hpp"

using namespace icb;
using icb::testing::min_path_cost_enumerated;

namespace {

Srbt fixture_srbt(const NetworkModel& net, const CostProfile& announced) {
  return build_srbt(net, announced);
}

}  // namespace

TEST_CASE("expected externalities on the paper example") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = fixture_srbt(net, announced);
  ExpectedExternality ee = expected_externalities(net, srbt.routers);
  CHECK(ee.xi[0] == doctest::Approx(28.0).epsilon(1e-12));
  CHECK(ee.xi[1] == doctest::Approx(12.5).epsilon(1e-12));
  CHECK(ee.xi[2] == doctest::Approx(15.5).epsilon(1e-12));
  CHECK(ee.xi[3] == doctest::Approx(28.0).epsilon(1e-12));
}

TEST_CASE("expected externalities degenerate cases") {
  auto [net, announced] = testing::path4_fixture();
  ExpectedExternality empty = expected_externalities(net, {});
  CHECK(empty.xi == std::vector<double>(4, 0.0));

  ExpectedExternality single = expected_externalities(net, {2});
  CHECK(single.xi[2] == 0.0);
  CHECK(single.xi[0] == doctest::Approx(12.5));
  CHECK(single.xi[1] == doctest::Approx(12.5));
  CHECK(single.xi[3] == doctest::Approx(12.5));

  CHECK_THROWS_AS(expected_externalities(net, {0}), Error);  // source
}

TEST_CASE("BIC-B payments reproduce the paper example") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = fixture_srbt(net, announced);
  std::vector<double> t = bicb_payments(net, srbt.routers);
  CHECK(t[0] == doctest::Approx(-9.33).epsilon(0.001));
  CHECK(t[1] == doctest::Approx(11.33).epsilon(0.001));
  CHECK(t[2] == doctest::Approx(7.33).epsilon(0.001));
  CHECK(t[3] == doctest::Approx(-9.33).epsilon(0.001));
  CHECK(t[1] == doctest::Approx(34.0 / 3.0).epsilon(1e-12));

  double sum = t[0] + t[1] + t[2] + t[3];
  CHECK(std::abs(sum) <= 1e-9);

  // Non-routers pay the same amount, bit for bit.
  CHECK(t[0] == t[3]);
}

TEST_CASE("empty router set means zero payments") {
  auto [net, announced] = testing::path4_fixture();
  std::vector<double> t = bicb_payments(net, {});
  CHECK(t == std::vector<double>(4, 0.0));
}

TEST_CASE("closed form agrees with the expected-externality double sum") {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    int n = 4 + static_cast<int>(seed % 20);
    auto [net, prof] = random_network(n, 0.3, 1, 50, mix_seed({seed, 0xe0}));
    Srbt srbt = build_srbt(net, prof);
    std::vector<double> closed = bicb_payments(net, srbt.routers);
    std::vector<double> direct = bicb_payments_direct(net, srbt.routers);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(closed[i] - direct[i]) <= 1e-9);
    }
  }
}

TEST_CASE("budget balance and non-router structure on random instances") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    int n = 4 + static_cast<int>(seed % 30);
    auto [net, prof] = random_network(n, 0.3, 1, 50, mix_seed({seed, 0xbb}));
    Srbt srbt = build_srbt(net, prof);
    std::vector<double> t = bicb_payments(net, srbt.routers);
    double sum = 0.0;
    for (double x : t) sum += x;
    CHECK(std::abs(sum) <= 1e-9);

    std::vector<char> is_router(n, 0);
    for (NodeId r : srbt.routers) is_router[r] = 1;
    double common = t[net.source];
    for (NodeId i = 0; i < n; ++i) {
      if (is_router[i]) continue;
      CHECK(t[i] == common);
      if (!srbt.routers.empty()) CHECK(t[i] < 0.0);
    }
  }
}

TEST_CASE("payments depend on the profile only through the router set") {
  auto [net, announced] = testing::path4_fixture();
  Srbt a = build_srbt(net, announced);
  CostProfile other;
  other.theta = {11, 16, 12, 7};  // same forced tree on the path
  Srbt b = build_srbt(net, other);
  REQUIRE(a.routers == b.routers);
  CHECK(bicb_payments(net, a.routers) == bicb_payments(net, b.routers));
}

TEST_CASE("router utility on the paper example") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = fixture_srbt(net, announced);
  double u2 = router_utility(net, srbt.routers, announced, 1);
  CHECK(u2 == doctest::Approx(17.0 / 3.0).epsilon(1e-9));   // -15 + 9.33 + 11.33
  double u3 = router_utility(net, srbt.routers, announced, 2);
  CHECK(u3 == doctest::Approx(11.0 / 3.0).epsilon(1e-9));   // (4*12.5 - 3*13)/3

  CHECK_THROWS_AS(router_utility(net, srbt.routers, announced, 0), NotARouterError);
  CHECK_THROWS_AS(router_utility(net, srbt.routers, announced, 3), NotARouterError);
}

TEST_CASE("router utility matches its closed form") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    int n = 4 + static_cast<int>(seed % 12);
    auto [net, prof] = random_network(n, 0.3, 1, 50, mix_seed({seed, 0x7f}));
    Srbt srbt = build_srbt(net, prof);
    for (NodeId r : srbt.routers) {
      double direct = router_utility(net, srbt.routers, prof, r);
      double mean = mean_cost(net.type_spaces[r]);
      double closed = (n * mean - (n - 1) * prof.theta[r]) / (n - 1);
      CHECK(std::abs(direct - closed) <= 1e-9);
    }
  }
}

TEST_CASE("utility vanishes exactly at the IR threshold") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = fixture_srbt(net, announced);
  CHECK(ir_threshold(net, 1) == doctest::Approx(62.0 / 3.0).epsilon(1e-12));

  CostProfile at_threshold = announced;
  at_threshold.theta[1] = ir_threshold(net, 1);
  CHECK(std::abs(router_utility(net, srbt.routers, at_threshold, 1)) <= 1e-9);

  CostProfile zero_cost = announced;
  zero_cost.theta[1] = 1e-12;
  double u = router_utility(net, srbt.routers, zero_cost, 1);
  CHECK(u == doctest::Approx(4.0 * 15.5 / 3.0).epsilon(1e-9));
}

TEST_CASE("ir_threshold limits") {
  std::vector<TypeSpace> t2(2, TypeSpace::uniform_interval(10, 20));
  NetworkModel pair = build_network(2, {{0, 1}}, 0, t2);
  CHECK(ir_threshold(pair, 1) == doctest::Approx(2 * 15.0));

  auto [big, prof] = random_network(100, 0.1, 10, 20, 5);
  CHECK(ir_threshold(big, 1) == doctest::Approx((100.0 / 99.0) * 15.0));
}

TEST_CASE("DSIC-B refuses graphs with cut vertices") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = fixture_srbt(net, announced);
  CHECK_THROWS_AS(dsicb_payments(net, announced, srbt), NotBiconnectedError);
}

TEST_CASE("DSIC-B Clarke payment on the asymmetric cycle") {
  auto [net, announced] = testing::cycle4_fixture();  // theta = (50, 1, 5, 100)
  Srbt srbt = build_srbt(net, announced);
  REQUIRE(srbt.parent[2] == 1);  // b routes through a
  DsicbPayments p = dsicb_payments(net, announced, srbt);
  CHECK(p.paid[2] == doctest::Approx(100.0));  // 1 + 100 - 1
  CHECK(p.received[1] == doctest::Approx(100.0));
  CHECK(p.paid[1] == 0.0);   // attached to the source
  CHECK(p.paid[3] == 0.0);
  CHECK(p.received[2] == 0.0);
  CHECK(p.received[3] == 0.0);
}

TEST_CASE("DSIC-B detour terms match path enumeration on small graphs") {
  int checked = 0;
  for (uint64_t seed = 0; checked < 25 && seed < 600; ++seed) {
    int n = 4 + static_cast<int>(seed % 4);
    auto [net, prof] = random_network(n, 0.5, 1, 50, mix_seed({seed, 0xd0}));
    if (!is_biconnected(net)) continue;
    ++checked;
    Srbt srbt = build_srbt(net, prof);
    DsicbPayments p = dsicb_payments(net, prof, srbt);
    for (NodeId j = 0; j < n; ++j) {
      if (j == net.source) continue;
      NodeId parent = srbt.parent[j];
      if (parent == net.source) {
        CHECK(p.paid[j] == 0.0);
        continue;
      }
      double d_full = min_path_cost_enumerated(net, prof, j, -1);
      double d_without = min_path_cost_enumerated(net, prof, j, parent);
      CHECK(p.paid[j] ==
            doctest::Approx(prof.theta[parent] + d_without - d_full).epsilon(1e-9));
      // The Clarke charge always covers the parent's announced cost.
      CHECK(p.paid[j] >= prof.theta[parent] - 1e-9);
    }
  }
  CHECK(checked == 25);
}

TEST_CASE("DSIC-B budget runs a deficit only through multi-child routers") {
  int multi_child_seen = 0;
  for (uint64_t seed = 0; seed < 300 && multi_child_seen == 0; ++seed) {
    auto [net, prof] = random_network(8, 0.4, 1, 50, mix_seed({seed, 0xd2}));
    if (!is_biconnected(net)) continue;
    Srbt srbt = build_srbt(net, prof);
    DsicbPayments p = dsicb_payments(net, prof, srbt);
    double collected = 0.0, disbursed = 0.0;
    for (int i = 0; i < net.n; ++i) {
      collected += p.paid[i];
      disbursed += p.received[i];
    }
    CHECK(disbursed <= collected + 1e-9);
    std::vector<int> paying_children(net.n, 0);
    for (NodeId j = 0; j < net.n; ++j) {
      if (p.paid[j] > 0.0) ++paying_children[srbt.parent[j]];
    }
    bool multi = std::any_of(paying_children.begin(), paying_children.end(),
                             [](int c) { return c > 1; });
    if (multi) {
      ++multi_child_seen;
      CHECK(disbursed < collected - 1e-9);
    } else {
      CHECK(disbursed == doctest::Approx(collected).epsilon(1e-12));
    }
  }
  CHECK(multi_child_seen == 1);
}

TEST_CASE("DSIC-B truthfulness holds on the cycle with two-value priors") {
  std::vector<TypeSpace> types;
  types.push_back(TypeSpace::discrete_uniform({8, 9}));
  types.push_back(TypeSpace::discrete_uniform({1, 2}));
  types.push_back(TypeSpace::discrete_uniform({5, 6}));
  types.push_back(TypeSpace::discrete_uniform({3, 4}));
  NetworkModel net = build_network(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 0, types);
  CHECK(dsicb_truthfulness_check(net));
}

TEST_CASE("DSIC-B truthfulness is vacuous on a two-node network") {
  std::vector<TypeSpace> types(2, TypeSpace::discrete_uniform({5, 6}));
  NetworkModel net = build_network(2, {{0, 1}}, 0, types);
  CHECK(dsicb_truthfulness_check(net));
}

TEST_CASE("BIC-B payments are not dominant-strategy truthful") {
  NetworkModel net = testing::diamond_overlap_fixture();
  TruthfulnessResult r =
      dominant_strategy_truthful(net, Mechanism::kBicB, AllocationRule::kExactOptimal);
  CHECK_FALSE(r.truthful);
  CHECK(r.node == 1);
  CHECK(r.misreport < r.true_type);  // understating forces the router role
}

TEST_CASE("truthfulness enumeration enforces its bounds") {
  auto [net, prof] = random_network(7, 0.6, 1, 50, 3);
  CHECK_THROWS_AS(dominant_strategy_truthful(net, Mechanism::kBicB),
                  InstanceTooLargeError);
  NetworkModel diamond = testing::diamond_overlap_fixture();
  (void)prof;
  CHECK_NOTHROW(dominant_strategy_truthful(diamond, Mechanism::kBicB));
}

TEST_CASE("outcome wrappers carry the right legs") {
  auto [net, announced] = testing::cycle4_fixture();
  Srbt srbt = build_srbt(net, announced);
  Outcome bicb = bicb_outcome(net, srbt);
  CHECK(bicb.mechanism == Mechanism::kBicB);
  CHECK(bicb.received.empty());
  CHECK(std::abs(bicb.budget_sum()) <= 1e-9);

  Outcome dsicb = dsicb_outcome(net, announced, srbt);
  CHECK(dsicb.mechanism == Mechanism::kDsicB);
  CHECK(dsicb.payments[2] == doctest::Approx(-100.0));
  CHECK(dsicb.payments[1] == doctest::Approx(100.0));
  CHECK(dsicb.budget_sum() <= 1e-9);
}
