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

// Times the OpenMP experiment runner against the serial reference on an
// inflated grid and verifies that both produce identical records.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "icb/experiments.hpp"

using namespace icb;

namespace {

double time_run(std::vector<ExperimentRecord> (*runner)(const ExperimentConfig&),
                const ExperimentConfig& cfg, std::string* csv) {
  auto start = std::chrono::steady_clock::now();
  auto records = runner(cfg);
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  write_records_csv(os, records);
  *csv = os.str();
  return elapsed;
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  cfg.instances = argc > 1 ? std::atoi(argv[1]) : 400;
  cfg.n_values = {10, 20, 30, 40, 50, 60};
  cfg.base_seed = 99;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("grid: %zu node counts x %d instances\n", cfg.n_values.size(), cfg.instances);

  std::string serial_csv, parallel_csv;
  double serial = time_run(run_experiment_serial, cfg, &serial_csv);
  std::printf("serial:   %.3fs\n", serial);
  double parallel = time_run(run_experiment, cfg, &parallel_csv);
  std::printf("parallel: %.3fs\n", parallel);
  std::printf("speedup:  %.2fx\n", serial / parallel);

  if (serial_csv != parallel_csv) {
    std::printf("MISMATCH: serial and parallel records differ\n");
    return 1;
  }
  std::printf("records identical: yes (%zu bytes of CSV)\n", serial_csv.size());
  return 0;
}
