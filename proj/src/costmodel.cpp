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

#include "uvcark/costmodel.hpp"

#include <stdexcept>

namespace uvcark {

namespace {

std::uint64_t checked(unsigned __int128 v) {
  if (v > static_cast<unsigned __int128>(~0ull)) {
    throw std::overflow_error("cost count exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

unsigned __int128 u128(std::int64_t v) { return static_cast<unsigned __int128>(v); }

std::string row(std::string_view strategy, const StrategyCounts& c) {
  std::string out(strategy);
  out += "," + std::to_string(c.emulators_written);
  out += "," + std::to_string(c.uvc_programs_written);
  out += "," + std::to_string(c.transform_programs_written);
  out += "," + std::to_string(c.periodic_migration_executions);
  out += "," + std::to_string(c.executions_2105);
  return out + "\n";
}

}  // namespace

CostTable cost_counts(const CostParams& params) {
  const auto [m, n, p, q, k] = params;
  if (m < 0 || n < 0 || p < 0 || q < 0) {
    throw std::invalid_argument("cost parameters must be non-negative");
  }
  if (k < 1) throw std::invalid_argument("migration count k must be >= 1");

  const std::uint64_t executions = checked(u128(p) * u128(q));

  CostTable t;
  // A translator per data type for each migration hop; the first hop is the
  // original authoring and the last machine is the reader's, hence the -2.
  const __int128 hops = static_cast<__int128>(m) + n + k - 2;
  t.migration.transform_programs_written =
      hops <= 0 ? 0 : checked(u128(p) * static_cast<unsigned __int128>(hops));
  t.migration.periodic_migration_executions = checked(u128(k - 1) * u128(p) * u128(q));
  t.migration.executions_2105 = executions;

  t.emulation.emulators_written = checked(u128(m) * u128(n));
  t.emulation.executions_2105 = executions;

  t.durable.emulators_written = checked(u128(m) + u128(n));
  t.durable.uvc_programs_written = static_cast<std::uint64_t>(p);
  t.durable.executions_2105 = executions;
  return t;
}

double weighted_cost(const StrategyCounts& c, const CostWeights& w) {
  return static_cast<double>(c.emulators_written) * w.emulator +
         static_cast<double>(c.uvc_programs_written) * w.uvc_program +
         static_cast<double>(c.transform_programs_written) * w.transform_program +
         static_cast<double>(c.periodic_migration_executions) * w.migration_execution +
         static_cast<double>(c.executions_2105) * w.execution_2105;
}

std::string to_csv(const CostTable& t) {
  std::string out =
      "strategy,emulators_written,uvc_programs_written,transform_programs_written,"
      "periodic_migration_executions,executions_2105\n";
  out += row("migration", t.migration);
  out += row("emulation", t.emulation);
  out += row("durable", t.durable);
  return out;
}

std::string to_text(const CostTable& t) {
  auto line = [](std::string_view name, std::uint64_t mig, std::uint64_t emu, std::uint64_t dur) {
    std::string out(name);
    out.resize(34, ' ');
    auto cell = [](std::uint64_t v) {
      std::string s = std::to_string(v);
      return std::string(s.size() >= 12 ? 1 : 12 - s.size(), ' ') + s;
    };
    return out + cell(mig) + cell(emu) + cell(dur) + "\n";
  };
  std::string out = "kind of work                         migration   emulation     durable\n";
  out += line("writing emulators", t.migration.emulators_written, t.emulation.emulators_written,
              t.durable.emulators_written);
  out += line("writing UVC programs", t.migration.uvc_programs_written,
              t.emulation.uvc_programs_written, t.durable.uvc_programs_written);
  out += line("writing transformation programs", t.migration.transform_programs_written,
              t.emulation.transform_programs_written, t.durable.transform_programs_written);
  out += line("executing periodic migrations", t.migration.periodic_migration_executions,
              t.emulation.periodic_migration_executions,
              t.durable.periodic_migration_executions);
  out += line("executing in 2105", t.migration.executions_2105, t.emulation.executions_2105,
              t.durable.executions_2105);
  return out;
}

}  // namespace uvcark
