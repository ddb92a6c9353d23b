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

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "icb/experiments.hpp"
#include "icb/rng.hpp"

using namespace icb;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_values = {5, 8};
  cfg.instances = 6;
  cfg.base_seed = 777;
  return cfg;
}

}  // namespace

TEST_CASE("APR on the paper example") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = build_srbt(net, announced);
  Outcome outcome = bicb_outcome(net, srbt);
  CHECK(compute_apr(outcome) == doctest::Approx(28.0 / 3.0).epsilon(1e-9));  // 9.33
}

TEST_CASE("APR of a single router is its payment") {
  auto [net, announced] = testing::cycle4_fixture();
  Srbt srbt = build_srbt(net, announced);
  Outcome bicb = bicb_outcome(net, srbt);
  CHECK(compute_apr(bicb) == doctest::Approx(bicb.payments[1]));
  Outcome dsicb = dsicb_outcome(net, announced, srbt);
  CHECK(compute_apr(dsicb) == doctest::Approx(100.0));  // gross received leg
}

TEST_CASE("APR is undefined without routers") {
  std::vector<TypeSpace> types(3, TypeSpace::uniform_interval(1, 50));
  NetworkModel net = build_network(3, {{0, 1}, {0, 2}}, 0, types);
  CostProfile theta;
  theta.theta = {1, 1, 1};
  Outcome outcome = bicb_outcome(net, build_srbt(net, theta));
  CHECK_THROWS_AS(compute_apr(outcome), NoRoutersError);
}

TEST_CASE("WOR on the paper example") {
  auto [net, announced] = testing::path4_fixture();
  Srbt srbt = build_srbt(net, announced);
  Outcome outcome = bicb_outcome(net, srbt);
  // Node 4 pays 9.33 against a path value of 28; node 1 is the source and
  // node 2 sits next to it, so node 4 is the only contributor.
  CHECK(compute_wor(outcome, net, announced) == doctest::Approx((28.0 / 3.0) / 28.0));
}

TEST_CASE("WOR is undefined when every payer neighbors the source") {
  std::vector<TypeSpace> types(4, TypeSpace::uniform_interval(1, 50));
  NetworkModel net = build_network(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}, 0, types);
  CostProfile theta;
  theta.theta = {9, 1, 9, 9};
  Srbt srbt = build_srbt(net, theta);
  Outcome outcome = bicb_outcome(net, srbt);
  CHECK_THROWS_AS(compute_wor(outcome, net, theta), NoPayersError);
}

TEST_CASE("WOR blows up for DSIC-B on the asymmetric cycle") {
  auto [net, announced] = testing::cycle4_fixture();
  Srbt srbt = build_srbt(net, announced);
  Outcome dsicb = dsicb_outcome(net, announced, srbt);
  CHECK(compute_wor(dsicb, net, announced) == doctest::Approx(100.0 / 1.0));
}

TEST_CASE("experiment runs are deterministic") {
  ExperimentConfig cfg = small_config();
  auto a = run_experiment(cfg);
  auto b = run_experiment(cfg);
  REQUIRE(a.size() == b.size());
  std::ostringstream csv_a, csv_b;
  write_records_csv(csv_a, a);
  write_records_csv(csv_b, b);
  CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("parallel and serial runners emit identical records") {
  ExperimentConfig cfg = small_config();
  cfg.instances = 10;
  auto parallel = run_experiment(cfg);
  auto serial = run_experiment_serial(cfg);
  std::ostringstream csv_p, csv_s;
  write_records_csv(csv_p, parallel);
  write_records_csv(csv_s, serial);
  CHECK(csv_p.str() == csv_s.str());
}

TEST_CASE("records replay from their stored seed") {
  ExperimentConfig cfg = small_config();
  auto records = run_experiment(cfg);
  REQUIRE_FALSE(records.empty());
  for (size_t idx = 0; idx < records.size(); idx += 3) {
    const ExperimentRecord& rec = records[idx];
    auto replayed = evaluate_instance(cfg, rec.n, rec.instance);
    bool found = false;
    for (const auto& r : replayed) {
      if (r.mechanism != rec.mechanism) continue;
      found = true;
      CHECK(r.seed == rec.seed);
      CHECK(r.apr == rec.apr);
      CHECK(r.wor == rec.wor);
      CHECK(r.budget_sum == rec.budget_sum);
      CHECK(r.skipped_reason == rec.skipped_reason);
    }
    CHECK(found);
  }
}

TEST_CASE("records are ordered and budget-balanced for BIC-B") {
  ExperimentConfig cfg = small_config();
  auto records = run_experiment(cfg);
  for (size_t i = 1; i < records.size(); ++i) {
    const auto& prev = records[i - 1];
    const auto& cur = records[i];
    bool ordered = prev.n < cur.n ||
                   (prev.n == cur.n &&
                    (prev.instance < cur.instance ||
                     (prev.instance == cur.instance &&
                      prev.mechanism == Mechanism::kBicB)));
    CHECK(ordered);
  }
  for (const auto& rec : records) {
    if (rec.mechanism == Mechanism::kBicB && rec.budget_sum) {
      CHECK(std::abs(*rec.budget_sum) <= 1e-9);
    }
    if (rec.mechanism == Mechanism::kDsicB && rec.budget_sum) {
      CHECK(*rec.budget_sum <= 1e-9);
    }
  }
}

TEST_CASE("aggregate folds records per n and mechanism") {
  ExperimentConfig cfg = small_config();
  auto records = run_experiment(cfg);
  auto rows = aggregate(records);
  CHECK(rows.size() == 4);  // 2 n-values x 2 mechanisms
  for (const auto& row : rows) {
    CHECK(row.min_wor <= row.max_wor);
  }

  // Mean of identical and hand-made values.
  std::vector<ExperimentRecord> fake(3);
  for (int i = 0; i < 3; ++i) {
    fake[i].n = 5;
    fake[i].instance = i;
    fake[i].mechanism = Mechanism::kBicB;
    fake[i].apr = 7.5;
    fake[i].wor = (i == 0) ? 2.0 : 4.0;  // only two carry the max
    fake[i].budget_sum = 0.0;
    fake[i].router_count = 1;
  }
  fake[2].wor.reset();
  fake[2].skipped_reason = "no_payers";
  auto folded = aggregate(fake);
  REQUIRE(folded.size() == 1);
  CHECK(folded[0].mean_apr == doctest::Approx(7.5));
  CHECK(folded[0].mean_wor == doctest::Approx(3.0));
  CHECK(folded[0].min_wor == doctest::Approx(2.0));
  CHECK(folded[0].max_wor == doctest::Approx(4.0));
  CHECK(folded[0].skips == 1);

  CHECK_THROWS_AS(aggregate({}), EmptyInputError);
}

TEST_CASE("skipped DSIC-B rows carry a reason and no metrics") {
  ExperimentConfig cfg = small_config();
  cfg.biconnect_retries = 0;  // force skips on non-biconnected draws
  auto records = run_experiment(cfg);
  bool saw_skip = false;
  for (const auto& rec : records) {
    if (rec.mechanism == Mechanism::kDsicB && rec.skipped_reason == "not_biconnected") {
      saw_skip = true;
      CHECK_FALSE(rec.apr.has_value());
      CHECK_FALSE(rec.wor.has_value());
      CHECK_FALSE(rec.budget_sum.has_value());
    }
  }
  CHECK(saw_skip);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.n_values = {};
  CHECK_THROWS_AS(cfg.validate(), ConfigInvalidError);
  cfg = ExperimentConfig{};
  cfg.instances = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigInvalidError);
  cfg = ExperimentConfig{};
  cfg.edge_density = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigInvalidError);
  cfg = ExperimentConfig{};
  cfg.cost_lo = 10;
  cfg.cost_hi = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigInvalidError);
}

TEST_CASE("CSV output shape") {
  ExperimentConfig cfg = small_config();
  cfg.instances = 2;
  auto records = run_experiment(cfg);
  std::ostringstream os;
  write_records_csv(os, records);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "n,instance,seed,mechanism,apr,wor,budget_sum,router_count,skipped_reason");
  int lines = 0;
  for (std::string line; std::getline(is, line);) ++lines;
  CHECK(lines == static_cast<int>(records.size()));

  std::ostringstream sum;
  write_summary_csv(sum, aggregate(records));
  CHECK(sum.str().rfind("n,mechanism,mean_apr,mean_wor,min_wor,max_wor,skips\n", 0) == 0);
}
