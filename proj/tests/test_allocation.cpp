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
#include "icb/rng.hpp"
#include "oracles.hpp"

using namespace icb;
using icb::testing::reference_optimal_router_set;

namespace {

double path_cost_to(const NetworkModel& net, const Srbt& srbt, const CostProfile& theta,
                    NodeId v) {
  double cost = 0.0;
  NodeId u = srbt.parent[v];
  while (u != -1 && u != net.source) {
    cost += theta.theta[u];
    u = srbt.parent[u];
  }
  return cost;
}

}  // namespace

TEST_CASE("least cost paths on the paper example") {
  auto [net, announced] = testing::path4_fixture();
  LeastCostPaths lcp = least_cost_paths(net, announced);
  CHECK(lcp.dist[0] == 0.0);
  CHECK(lcp.dist[1] == 0.0);
  CHECK(lcp.dist[2] == doctest::Approx(15.0));
  CHECK(lcp.dist[3] == doctest::Approx(28.0));
  CHECK(lcp.parent[0] == -1);
  CHECK(lcp.parent[1] == 0);
  CHECK(lcp.parent[2] == 1);
  CHECK(lcp.parent[3] == 2);
}

TEST_CASE("star with the source at the center has all-zero distances") {
  std::vector<TypeSpace> types(5, TypeSpace::uniform_interval(1, 50));
  NetworkModel net = build_network(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, 0, types);
  CostProfile theta;
  theta.theta = {9, 9, 9, 9, 9};
  LeastCostPaths lcp = least_cost_paths(net, theta);
  for (NodeId v = 1; v < 5; ++v) {
    CHECK(lcp.dist[v] == 0.0);
    CHECK(lcp.parent[v] == 0);
  }
}

TEST_CASE("a direct edge beats any relay") {
  std::vector<TypeSpace> types(3, TypeSpace::uniform_interval(1, 100));
  NetworkModel net = build_network(3, {{0, 1}, {0, 2}, {1, 2}}, 0, types);
  CostProfile theta;
  theta.theta = {1, 5, 50};
  LeastCostPaths lcp = least_cost_paths(net, theta);
  CHECK(lcp.dist[2] == 0.0);
  CHECK(lcp.parent[2] == 0);
}

TEST_CASE("build_srbt reproduces the paper router set") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = build_srbt(net, announced);
  CHECK(srbt.routers == std::vector<NodeId>{1, 2});
  CHECK(srbt.tree_cost == doctest::Approx(28.0));
  Allocation k = allocation_of(srbt, net.n);
  CHECK(k.k == std::vector<int>{0, 1, 1, 0});
}

TEST_CASE("source adjacent to everyone leaves no routers") {
  std::vector<TypeSpace> types(4, TypeSpace::uniform_interval(1, 50));
  NetworkModel net = build_network(4, {{0, 1}, {0, 2}, {0, 3}}, 0, types);
  CostProfile theta;
  theta.theta = {4, 4, 4, 4};
  Srbt srbt = build_srbt(net, theta);
  CHECK(srbt.routers.empty());
  CHECK(srbt.tree_cost == 0.0);
  CHECK(allocation_of(srbt, 4).k == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("optimal tree on the path is forced") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = optimal_broadcast_tree(net, announced);
  CHECK(srbt.routers == std::vector<NodeId>{1, 2});
}

TEST_CASE("optimal tree on the asymmetric cycle picks the cheap side") {
  auto [net, announced] = testing::cycle4_fixture();  // theta = (50, 1, 5, 100)
  Srbt srbt = optimal_broadcast_tree(net, announced);
  CHECK(srbt.routers == std::vector<NodeId>{1});
  CHECK(srbt.tree_cost == doctest::Approx(1.0));
  CHECK(srbt.parent[2] == 1);
  CHECK(srbt.parent[3] == 0);
}

TEST_CASE("optimal tree refuses oversized instances") {
  auto [net, prof] = random_network(17, 0.5, 1, 50, 3);
  CHECK_THROWS_AS(optimal_broadcast_tree(net, prof), InstanceTooLargeError);
}

TEST_CASE("optimal tree matches exhaustive reference on random graphs") {
  for (uint64_t seed = 0; seed < 80; ++seed) {
    int n = 3 + static_cast<int>(seed % 6);
    auto [net, prof] = random_network(n, 0.35, 1, 50, mix_seed({seed, 0xabc}));
    Srbt opt = optimal_broadcast_tree(net, prof);
    std::vector<NodeId> ref = reference_optimal_router_set(net, prof);
    CHECK(opt.routers == ref);
    Srbt lcp_tree = build_srbt(net, prof);
    CHECK(lcp_tree.tree_cost >= opt.tree_cost - 1e-12);
  }
}

TEST_CASE("SRBT paths agree with least cost path values") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    int n = 4 + static_cast<int>(seed % 12);
    auto [net, prof] = random_network(n, 0.3, 1, 50, mix_seed({seed, 0x51}));
    LeastCostPaths lcp = least_cost_paths(net, prof);
    Srbt srbt = build_srbt(net, prof);
    for (NodeId v = 0; v < n; ++v) {
      if (v == net.source) continue;
      CHECK(path_cost_to(net, srbt, prof, v) == doctest::Approx(lcp.dist[v]).epsilon(1e-12));
    }
  }
}

TEST_CASE("routers never include the source or tree leaves") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    int n = 4 + static_cast<int>(seed % 10);
    auto [net, prof] = random_network(n, 0.4, 1, 50, mix_seed({seed, 0x52}));
    Srbt srbt = build_srbt(net, prof);
    std::vector<char> has_child(n, 0);
    for (NodeId v = 0; v < n; ++v) {
      if (srbt.parent[v] >= 0) has_child[srbt.parent[v]] = 1;
    }
    for (NodeId r : srbt.routers) {
      CHECK(r != net.source);
      CHECK(has_child[r]);
    }
    for (NodeId v = 0; v < n; ++v) {
      bool is_router = std::binary_search(srbt.routers.begin(), srbt.routers.end(), v);
      if (!has_child[v]) CHECK_FALSE(is_router);
    }
  }
}

TEST_CASE("identical inputs give identical trees") {
  auto [net, prof] = random_network(20, 0.3, 1, 50, 11);
  Srbt a = build_srbt(net, prof);
  Srbt b = build_srbt(net, prof);
  CHECK(a.parent == b.parent);
  CHECK(a.routers == b.routers);

  auto [onet, oprof] = random_network(10, 0.3, 1, 50, 12);
  Srbt oa = optimal_broadcast_tree(onet, oprof);
  Srbt ob = optimal_broadcast_tree(onet, oprof);
  CHECK(oa.parent == ob.parent);
}

TEST_CASE("srbt_children inverts the parent map") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = build_srbt(net, announced);
  auto children = srbt_children(srbt, net.n);
  CHECK(children[0] == std::vector<NodeId>{1});
  CHECK(children[1] == std::vector<NodeId>{2});
  CHECK(children[2] == std::vector<NodeId>{3});
  CHECK(children[3].empty());
}
