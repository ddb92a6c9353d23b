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

#ifndef ICB_TESTS_FIXTURES_HPP_
#define ICB_TESTS_FIXTURES_HPP_

#include <utility>
#include <vector>

#include "icb/graph_model.hpp"

namespace icb::testing {

// Path 1-2-3-4 with two-value uniform priors and announced costs
// (10, 15, 13, 8). The golden instance for the whole payment pipeline:
// R = {2, 3}, t = (-28/3, 34/3, 22/3, -28/3).
inline std::pair<NetworkModel, CostProfile> path4_fixture() {
  std::vector<TypeSpace> types;
  types.push_back(TypeSpace::discrete_uniform({10, 11}));
  types.push_back(TypeSpace::discrete_uniform({15, 16}));
  types.push_back(TypeSpace::discrete_uniform({12, 13}));
  types.push_back(TypeSpace::discrete_uniform({7, 8}));
  NetworkModel net = build_network(4, {{0, 1}, {1, 2}, {2, 3}}, 0, std::move(types));
  CostProfile announced;
  announced.theta = {10, 15, 13, 8};
  return {std::move(net), std::move(announced)};
}

// 4-cycle s-a-b-c-s with a cheap relay a and an expensive alternative c.
// The unique LCP tree routes b through a; the Clarke charge of b is 100.
inline std::pair<NetworkModel, CostProfile> cycle4_fixture(double theta_a = 1.0,
                                                           double theta_b = 5.0,
                                                           double theta_c = 100.0) {
  std::vector<TypeSpace> types(4, TypeSpace::uniform_interval(1.0, 100.0));
  NetworkModel net = build_network(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 0, std::move(types));
  CostProfile announced;
  announced.theta = {50.0, theta_a, theta_b, theta_c};
  return {std::move(net), std::move(announced)};
}

// Diamond s-i, s-j, i-w, j-w where either i or j alone can cover w. The
// type spaces interleave so that the allocation flips within node i's own
// type range; the instance witnesses that a node whose announcement cannot
// lower its own payment can still profit from forcing itself into the
// router set.
inline NetworkModel diamond_overlap_fixture() {
  std::vector<TypeSpace> types;
  types.push_back(TypeSpace::discrete_uniform({5}));           // source
  types.push_back(TypeSpace::discrete_uniform({10, 11}));      // i
  types.push_back(TypeSpace::discrete_uniform({10.5, 12}));    // j
  types.push_back(TypeSpace::discrete_uniform({5}));           // w
  return build_network(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0, std::move(types));
}

}  // namespace icb::testing

#endif  // ICB_TESTS_FIXTURES_HPP_
