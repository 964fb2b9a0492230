// Copyright 2026 The jobset Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <string>

#include "jobset/solver.hpp"

namespace jobset {

// Adapter for plugging an external scheduling engine in as the makespan
// decision procedure. The configured command is spawned as
//
//     <command> <problem.json> <tau> <time_limit_seconds>
//
// where problem.json is an instance document of the queried subset (job ids
// remapped densely; the adapter maps any witness back to the original ids).
// The command must print exactly one line "CONSISTENT", "INCONSISTENT" or
// "UNKNOWN", optionally followed by one line with a witness in the schedule
// JSON format.
struct ExternalCheckerConfig {
  std::string command;
  std::chrono::seconds time_limit{60};
};

// Same contract as decide_makespan_le, answered by the external command.
// UNKNOWN maps to an Exhausted outcome. A returned witness is re-validated
// against the subset; a CONSISTENT verdict without one is trusted and yields
// an outcome with an empty witness. A malformed reply, a failing spawn or a
// witness that does not check out raises Error.
CheckOutcome external_decide_makespan_le(const ExternalCheckerConfig& config,
                                         const JobShopInstance& instance,
                                         const JobSet& subset, Time tau);

}  // namespace jobset
