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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "jobset/instance.hpp"
#include "jobset/schedule.hpp"

namespace jobset {

// OR-library job shop layout: first non-comment line "n m", then n lines of
// m "machine duration" pairs with 0-based machine ids. Lines starting with
// '#' and blank lines are skipped. Job ids follow file order; arrivals are 0
// and utilities 1. Throws ParseError with the offending line number.
JobShopInstance parse_taillard(std::string_view text);

// Inverse of parse_taillard for instances where every arrival is 0.
std::string serialize_taillard(const JobShopInstance& instance);

// Rich instance container: the instance itself plus the optional metadata a
// deadline problem needs (per-job utilities live on the jobs, the background
// and the known optimal makespan ride along).
struct InstanceDocument {
  std::string name;
  JobShopInstance instance;
  std::optional<JobSet> background;
  std::optional<Time> optimum;
};

// JSON document layout:
//   { "name": "...", "machines": M,
//     "jobs": [ { "operations": [[machine, duration], ...],
//                 "arrival": 0, "utility": 1 }, ... ],
//     "background": [ids...], "optimum": K }
// arrival/utility/background/optimum are optional.
InstanceDocument parse_instance_document(const std::string& json_text);
std::string serialize_instance_document(const InstanceDocument& document);

// Dispatches on extension: .json documents, anything else Taillard text.
InstanceDocument load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const InstanceDocument& document);

// Schedule wire format: [{"job": j, "op": k, "start": t}, ...]
std::string serialize_schedule(const Schedule& schedule);
Schedule parse_schedule(const std::string& json_text);

// Seeded random instance where every job visits every machine exactly once
// in a random order, with durations drawn from [dur_min, dur_max]. The same
// seed always produces the same instance.
JobShopInstance generate_instance(std::uint64_t seed, int jobs, int machines,
                                  Time dur_min, Time dur_max);

}  // namespace jobset
