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

#include "icb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include "icb/rng.hpp"

namespace icb {

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw ConfigInvalidError("n_values must not be empty");
  for (int n : n_values) {
    if (n < 2) throw ConfigInvalidError("every n must be >= 2");
  }
  if (instances < 1) throw ConfigInvalidError("instances must be >= 1");
  if (!(cost_lo > 0.0) || !(cost_lo < cost_hi)) {
    throw ConfigInvalidError("need 0 < cost_lo < cost_hi");
  }
  if (!(edge_density > 0.0) || edge_density > 1.0) {
    throw ConfigInvalidError("edge_density must lie in (0, 1]");
  }
  if (mechanisms.empty()) throw ConfigInvalidError("select at least one mechanism");
  if (biconnect_retries < 0) throw ConfigInvalidError("biconnect_retries must be >= 0");
}

double compute_apr(const Outcome& outcome) {
  double sum = 0.0;
  int count = 0;
  for (size_t i = 0; i < outcome.allocation.k.size(); ++i) {
    if (outcome.allocation.k[i] == 1) {
      sum += outcome.mechanism == Mechanism::kDsicB ? outcome.received[i]
                                                    : outcome.payments[i];
      ++count;
    }
  }
  if (count == 0) throw NoRoutersError("instance has no routers");
  return sum / count;
}

double compute_wor(const Outcome& outcome, const NetworkModel& net,
                   const CostProfile& theta) {
  LeastCostPaths lcp = least_cost_paths(net, theta);
  double worst = -1.0;
  for (NodeId i = 0; i < net.n; ++i) {
    double payment_made = 0.0;
    if (outcome.mechanism == Mechanism::kBicB) {
      if (outcome.allocation.k[i] == 1 || outcome.payments[i] >= 0.0) continue;
      payment_made = -outcome.payments[i];
    } else {
      if (!(outcome.paid[i] > 0.0)) continue;
      payment_made = outcome.paid[i];
    }
    if (!(lcp.dist[i] > 0.0)) continue;  // adjacent to the source: ratio undefined
    worst = std::max(worst, payment_made / lcp.dist[i]);
  }
  if (worst < 0.0) {
    throw NoPayersError("no paying node with a positive-cost path");
  }
  return worst;
}

namespace {

ExperimentRecord skipped_record(int n, int index, uint64_t seed, Mechanism mechanism,
                                const std::string& reason) {
  ExperimentRecord rec;
  rec.n = n;
  rec.instance = index;
  rec.seed = seed;
  rec.mechanism = mechanism;
  rec.skipped_reason = reason;
  return rec;
}

int mechanism_order(Mechanism m) { return m == Mechanism::kBicB ? 0 : 1; }

}  // namespace

std::vector<ExperimentRecord> evaluate_instance(const ExperimentConfig& cfg, int n,
                                                int index) {
  const uint64_t instance_seed =
      mix_seed({cfg.base_seed, static_cast<uint64_t>(n), static_cast<uint64_t>(index)});
  const bool want_dsicb =
      std::find(cfg.mechanisms.begin(), cfg.mechanisms.end(), Mechanism::kDsicB) !=
      cfg.mechanisms.end();

  NetworkModel net;
  CostProfile profile;
  bool biconnected = false;
  for (int attempt = 0; attempt <= cfg.biconnect_retries; ++attempt) {
    std::tie(net, profile) = random_network(
        n, cfg.edge_density, cfg.cost_lo, cfg.cost_hi,
        mix_seed({instance_seed, static_cast<uint64_t>(attempt)}));
    biconnected = is_biconnected(net);
    if (biconnected || !want_dsicb) break;
  }

  Srbt srbt = build_tree(net, profile, cfg.allocation_rule);

  std::vector<ExperimentRecord> records;
  for (Mechanism mechanism : cfg.mechanisms) {
    if (mechanism == Mechanism::kDsicB && !biconnected) {
      records.push_back(skipped_record(n, index, instance_seed, mechanism,
                                       "not_biconnected"));
      continue;
    }
    Outcome outcome = mechanism_outcome(net, profile, srbt, mechanism);
    ExperimentRecord rec;
    rec.n = n;
    rec.instance = index;
    rec.seed = instance_seed;
    rec.mechanism = mechanism;
    rec.budget_sum = outcome.budget_sum();
    rec.router_count = static_cast<int>(srbt.routers.size());
    try {
      rec.apr = compute_apr(outcome);
    } catch (const NoRoutersError&) {
      rec.skipped_reason = "no_routers";
    }
    if (rec.skipped_reason.empty()) {
      try {
        rec.wor = compute_wor(outcome, net, profile);
      } catch (const NoPayersError&) {
        rec.skipped_reason = "no_payers";
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

namespace {

std::vector<ExperimentRecord> run_grid(const ExperimentConfig& cfg, bool parallel) {
  cfg.validate();
  std::vector<std::pair<int, int>> grid;
  for (int n : cfg.n_values) {
    for (int i = 0; i < cfg.instances; ++i) grid.emplace_back(n, i);
  }
  std::vector<std::vector<ExperimentRecord>> buckets(grid.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long g = 0; g < static_cast<long>(grid.size()); ++g) {
      buckets[g] = evaluate_instance(cfg, grid[g].first, grid[g].second);
    }
  } else {
    for (size_t g = 0; g < grid.size(); ++g) {
      buckets[g] = evaluate_instance(cfg, grid[g].first, grid[g].second);
    }
  }
  std::vector<ExperimentRecord> records;
  for (auto& bucket : buckets) {
    for (auto& rec : bucket) records.push_back(std::move(rec));
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     if (a.n != b.n) return a.n < b.n;
                     if (a.instance != b.instance) return a.instance < b.instance;
                     return mechanism_order(a.mechanism) < mechanism_order(b.mechanism);
                   });
  return records;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  return run_grid(cfg, true);
}

std::vector<ExperimentRecord> run_experiment_serial(const ExperimentConfig& cfg) {
  return run_grid(cfg, false);
}

std::vector<SummaryRow> aggregate(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw EmptyInputError("no records to aggregate");
  std::map<std::pair<int, int>, SummaryRow> rows;
  for (const auto& rec : records) {
    auto key = std::make_pair(rec.n, mechanism_order(rec.mechanism));
    auto [it, fresh] = rows.try_emplace(key);
    SummaryRow& row = it->second;
    if (fresh) {
      row.n = rec.n;
      row.mechanism = rec.mechanism;
      row.min_wor = std::numeric_limits<double>::infinity();
      row.max_wor = -std::numeric_limits<double>::infinity();
    }
    if (!rec.skipped_reason.empty()) ++row.skips;
    if (rec.apr) {
      row.mean_apr += *rec.apr;
      ++row.apr_count;
    }
    if (rec.wor) {
      row.mean_wor += *rec.wor;
      row.min_wor = std::min(row.min_wor, *rec.wor);
      row.max_wor = std::max(row.max_wor, *rec.wor);
      ++row.wor_count;
    }
  }
  std::vector<SummaryRow> out;
  out.reserve(rows.size());
  for (auto& [key, row] : rows) {
    if (row.apr_count > 0) row.mean_apr /= row.apr_count;
    if (row.wor_count > 0) {
      row.mean_wor /= row.wor_count;
    } else {
      row.min_wor = row.max_wor = 0.0;
    }
    out.push_back(row);
  }
  return out;
}

std::string format_money(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
  os << "n,instance,seed,mechanism,apr,wor,budget_sum,router_count,skipped_reason\n";
  for (const auto& rec : records) {
    os << rec.n << ',' << rec.instance << ',' << rec.seed << ','
       << mechanism_name(rec.mechanism) << ',';
    if (rec.apr) os << format_money(*rec.apr);
    os << ',';
    if (rec.wor) os << format_money(*rec.wor);
    os << ',';
    if (rec.budget_sum) os << format_money(*rec.budget_sum);
    os << ',';
    if (rec.router_count) os << *rec.router_count;
    os << ',' << rec.skipped_reason << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "n,mechanism,mean_apr,mean_wor,min_wor,max_wor,skips\n";
  for (const auto& row : rows) {
    os << row.n << ',' << mechanism_name(row.mechanism) << ','
       << format_money(row.mean_apr) << ',' << format_money(row.mean_wor) << ','
       << format_money(row.min_wor) << ',' << format_money(row.max_wor) << ','
       << row.skips << '\n';
  }
}

}  // namespace icb
