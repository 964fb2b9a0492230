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

#include <map>
#include <optional>
#include <utility>

#include "jobset/instance.hpp"

namespace jobset {

// Identifies one operation: `op` is the 0-based index into the job's chain.
struct OperationId {
  int job = 0;
  int op = 0;
  auto operator<=>(const OperationId&) const = default;
};

// Start-time assignment for the operations of some job subset. Which subset
// is meant is supplied at evaluation time; evaluation rejects a schedule
// whose keys do not cover exactly that subset's operations.
class Schedule {
 public:
  void set_start(int job, int op, Time start) { starts_[OperationId{job, op}] = start; }

  std::optional<Time> start(int job, int op) const {
    auto it = starts_.find(OperationId{job, op});
    if (it == starts_.end()) return std::nullopt;
    return it->second;
  }

  bool empty() const { return starts_.empty(); }
  std::size_t size() const { return starts_.size(); }
  const std::map<OperationId, Time>& starts() const { return starts_; }

  bool operator==(const Schedule&) const = default;

 private:
  std::map<OperationId, Time> starts_;
};

// True iff the schedule satisfies, for the given subset: arrival constraints,
// the per-job chain order (an operation starts no earlier than its
// predecessor's completion), and machine disjointness (execution intervals
// [start, start+duration) on one machine never overlap).
//
// Throws CoverageError when the schedule's keys are not exactly the subset's
// operations. The empty subset with an empty schedule is consistent.
bool is_consistent_schedule(const JobShopInstance& instance, const JobSet& subset,
                            const Schedule& schedule);

// Completion time of the latest operation; 0 for the empty subset.
// Throws CoverageError under the same condition as is_consistent_schedule.
Time makespan(const JobShopInstance& instance, const JobSet& subset,
              const Schedule& schedule);

}  // namespace jobset
