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

#include "jobset/brute_force.hpp"

#include <limits>
#include <vector>

#include "jobset/errors.hpp"

namespace jobset {

namespace {

// Chronological Giffler-Thompson enumeration. A state schedules one operation
// per step; the branching choices at a step are exactly the operations in the
// conflict set of the machine that owns the earliest-completing candidate.
struct Enumeration {
  const JobShopInstance& instance;
  std::vector<int> job_ids;        // subset, ascending
  std::vector<int> next_op;        // per subset position
  std::vector<Time> job_ready;     // per subset position
  std::vector<Time> machine_ready; // per machine
  int remaining = 0;
  Time partial_makespan = 0;

  Time best = std::numeric_limits<Time>::max();
  std::int64_t nodes = 0;
  std::int64_t max_nodes = 0;

  explicit Enumeration(const JobShopInstance& inst, const JobSet& subset,
                       std::int64_t node_cap)
      : instance(inst),
        job_ids(subset.ids()),
        machine_ready(static_cast<std::size_t>(inst.machine_count()), 0),
        max_nodes(node_cap) {
    next_op.resize(job_ids.size(), 0);
    job_ready.resize(job_ids.size());
    for (std::size_t i = 0; i < job_ids.size(); ++i) {
      job_ready[i] = instance.job(job_ids[i]).arrival;
      remaining += static_cast<int>(instance.job(job_ids[i]).operations.size());
    }
  }

  void run() {
    if (remaining == 0) {
      best = 0;
      return;
    }
    descend();
  }

  void descend() {
    if (remaining == 0) {
      if (partial_makespan < best) best = partial_makespan;
      return;
    }
    if (partial_makespan >= best) return;  // cannot improve the minimum

    if (++nodes > max_nodes) {
      throw BudgetExhaustedError("active-schedule enumeration exceeded " +
                                 std::to_string(max_nodes) + " nodes");
    }

    // Earliest completion over all next operations picks the branch machine.
    Time best_completion = std::numeric_limits<Time>::max();
    int branch_machine = -1;
    for (std::size_t i = 0; i < job_ids.size(); ++i) {
      if (next_op[i] >= static_cast<int>(instance.job(job_ids[i]).operations.size())) continue;
      const OperationSpec& op =
          instance.job(job_ids[i]).operations[static_cast<std::size_t>(next_op[i])];
      const Time est = std::max(job_ready[i], machine_ready[static_cast<std::size_t>(op.machine)]);
      const Time ect = est + op.duration;
      if (ect < best_completion) {
        best_completion = ect;
        branch_machine = op.machine;
      }
    }

    // Conflict set: candidates on the branch machine starting before the
    // earliest completion. Branch order is ascending job id.
    for (std::size_t i = 0; i < job_ids.size(); ++i) {
      if (next_op[i] >= static_cast<int>(instance.job(job_ids[i]).operations.size())) continue;
      const OperationSpec& op =
          instance.job(job_ids[i]).operations[static_cast<std::size_t>(next_op[i])];
      if (op.machine != branch_machine) continue;
      const Time est = std::max(job_ready[i], machine_ready[static_cast<std::size_t>(op.machine)]);
      if (est >= best_completion) continue;

      const Time end = est + op.duration;
      const Time saved_job_ready = job_ready[i];
      const Time saved_machine_ready = machine_ready[static_cast<std::size_t>(op.machine)];
      const Time saved_makespan = partial_makespan;

      job_ready[i] = end;
      machine_ready[static_cast<std::size_t>(op.machine)] = end;
      partial_makespan = std::max(partial_makespan, end);
      ++next_op[i];
      --remaining;

      descend();

      ++remaining;
      --next_op[i];
      partial_makespan = saved_makespan;
      machine_ready[static_cast<std::size_t>(op.machine)] = saved_machine_ready;
      job_ready[i] = saved_job_ready;
    }
  }
};

}  // namespace

Time brute_force_optimal_makespan(const JobShopInstance& instance, const JobSet& subset,
                                  std::int64_t max_nodes) {
  Enumeration e(instance, subset, max_nodes);
  e.run();
  return e.best;
}

}  // namespace jobset
