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

#include "jobset/schedule.hpp"

#include <algorithm>

#include "jobset/errors.hpp"

namespace jobset {

namespace {

void check_coverage(const JobShopInstance& instance, const JobSet& subset,
                    const Schedule& schedule) {
  std::size_t expected = 0;
  for (int id : subset.ids()) {
    const JobSpec& job = instance.job(id);
    expected += job.operations.size();
    for (std::size_t k = 0; k < job.operations.size(); ++k) {
      if (!schedule.start(id, static_cast<int>(k)).has_value()) {
        throw CoverageError("schedule is missing a start time for job " + std::to_string(id) +
                            " operation " + std::to_string(k));
      }
    }
  }
  if (schedule.size() != expected) {
    for (const auto& [key, start] : schedule.starts()) {
      (void)start;
      const bool known_job = key.job >= 0 && key.job < instance.job_count();
      const bool in_subset = known_job && subset.contains(key.job);
      const bool known_op =
          known_job && key.op >= 0 &&
          key.op < static_cast<int>(instance.job(key.job).operations.size());
      if (!in_subset || !known_op) {
        throw CoverageError("schedule assigns job " + std::to_string(key.job) + " operation " +
                            std::to_string(key.op) + " which is not part of the subset");
      }
    }
  }
}

}  // namespace

bool is_consistent_schedule(const JobShopInstance& instance, const JobSet& subset,
                            const Schedule& schedule) {
  check_coverage(instance, subset, schedule);

  struct Interval {
    Time begin;
    Time end;
  };
  std::vector<std::vector<Interval>> per_machine(
      static_cast<std::size_t>(std::max(instance.machine_count(), 0)));

  for (int id : subset.ids()) {
    const JobSpec& job = instance.job(id);
    Time previous_end = job.arrival;
    for (std::size_t k = 0; k < job.operations.size(); ++k) {
      const OperationSpec& op = job.operations[k];
      const Time start = *schedule.start(id, static_cast<int>(k));
      if (start < 0) return false;
      if (start < previous_end) return false;  // arrival or chain violated
      previous_end = start + op.duration;
      per_machine[static_cast<std::size_t>(op.machine)].push_back(
          Interval{start, start + op.duration});
    }
  }

  for (auto& intervals : per_machine) {
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.begin < b.begin; });
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      if (intervals[i].begin < intervals[i - 1].end) return false;
    }
  }
  return true;
}

Time makespan(const JobShopInstance& instance, const JobSet& subset,
              const Schedule& schedule) {
  check_coverage(instance, subset, schedule);
  Time result = 0;
  for (int id : subset.ids()) {
    const JobSpec& job = instance.job(id);
    for (std::size_t k = 0; k < job.operations.size(); ++k) {
      const Time end = *schedule.start(id, static_cast<int>(k)) + job.operations[k].duration;
      result = std::max(result, end);
    }
  }
  return result;
}

}  // namespace jobset
