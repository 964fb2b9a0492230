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
#include <string>
#include <vector>

#include "jobset/job_set.hpp"

namespace jobset {

// All times (arrivals, durations, start times, makespans) are integral.
using Time = std::int64_t;

// One processing step of a job: runs for `duration` time units on the single
// machine it is compatible with.
struct OperationSpec {
  int machine = 0;
  Time duration = 0;
};

// A job is an ordered, non-empty chain of operations. The chain order is the
// mandatory processing sequence; no operation may start before `arrival`.
struct JobSpec {
  int id = 0;
  std::vector<OperationSpec> operations;
  Time arrival = 0;
  std::int64_t utility = 1;

  Time duration_sum() const {
    Time sum = 0;
    for (const auto& op : operations) sum += op.duration;
    return sum;
  }
};

// A job shop instance: jobs with dense 0-based ids, every operation bound to
// one of `machine_count` machines. Immutable after construction.
class JobShopInstance {
 public:
  JobShopInstance() = default;
  JobShopInstance(std::vector<JobSpec> jobs, int machine_count)
      : jobs_(std::move(jobs)), machine_count_(machine_count) {}

  int job_count() const { return static_cast<int>(jobs_.size()); }
  int machine_count() const { return machine_count_; }
  const std::vector<JobSpec>& jobs() const { return jobs_; }
  const JobSpec& job(int id) const { return jobs_.at(static_cast<std::size_t>(id)); }

  int operation_count() const {
    int n = 0;
    for (const auto& j : jobs_) n += static_cast<int>(j.operations.size());
    return n;
  }

  JobSet all_jobs() const { return JobSet::all(job_count()); }
  JobSet no_jobs() const { return JobSet(job_count()); }

  std::int64_t total_utility(const JobSet& kept) const {
    std::int64_t sum = 0;
    for (int id : kept.ids()) sum += job(id).utility;
    return sum;
  }

 private:
  std::vector<JobSpec> jobs_;
  int machine_count_ = 0;
};

// Checks every structural invariant: positive durations, machine ids within
// range, non-empty operation chains, dense job ids, non-negative arrivals and
// utilities, at least one machine. Returns one message per violation; an
// empty result means the instance is well formed.
std::vector<std::string> validate_instance(const JobShopInstance& instance);

}  // namespace jobset
