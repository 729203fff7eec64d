/*
   Copyright 2026 The uvcark Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>

namespace uvcark {

/// Workload parameters: p data types with q instances each, spread over m
/// present-day computer types, to be consumed on any of n future computer
/// types, with k forced migrations along the way.
struct CostParams {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t k = 1;
};

/// Work counts for one preservation strategy.
struct StrategyCounts {
  std::uint64_t emulators_written = 0;
  std::uint64_t uvc_programs_written = 0;
  std::uint64_t transform_programs_written = 0;
  std::uint64_t periodic_migration_executions = 0;
  std::uint64_t executions_2105 = 0;
};

struct CostTable {
  StrategyCounts migration;
  StrategyCounts emulation;
  StrategyCounts durable;
};

/// Unit-cost hook for users with their own estimates; counts are multiplied
/// by these when totaling. The counts themselves are never weighted.
struct CostWeights {
  double emulator = 1.0;
  double uvc_program = 1.0;
  double transform_program = 1.0;
  double migration_execution = 1.0;
  double execution_2105 = 1.0;
};

/// Program-writing and execution counts for the three strategies:
///   migration: {0, 0, p*(m+n+k-2), (k-1)*p*q, p*q}  (transforms clamp at 0)
///   emulation: {m*n, 0, 0, 0, p*q}
///   durable:   {m+n, p, 0, 0, p*q}
/// Throws std::invalid_argument when a parameter is negative or k < 1, and
/// std::overflow_error when a count exceeds 64 bits.
CostTable cost_counts(const CostParams& params);

double weighted_cost(const StrategyCounts& counts, const CostWeights& weights = {});

/// One row per strategy, with a header row.
std::string to_csv(const CostTable& table);

std::string to_text(const CostTable& table);

}  // namespace uvcark
