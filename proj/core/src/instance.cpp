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

#include "jobset/instance.hpp"

#include <sstream>

namespace jobset {

std::vector<std::string> validate_instance(const JobShopInstance& instance) {
  std::vector<std::string> violations;
  auto report = [&violations](const std::string& msg) { violations.push_back(msg); };

  if (instance.machine_count() < 1) {
    report("instance: machine count must be >= 1, got " +
           std::to_string(instance.machine_count()));
  }

  const auto& jobs = instance.jobs();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const JobSpec& job = jobs[i];
    std::ostringstream where;
    where << "job " << i;

    if (job.id != static_cast<int>(i)) {
      report(where.str() + ": id " + std::to_string(job.id) +
             " does not match its position (ids must be dense and 0-based)");
    }
    if (job.operations.empty()) {
      report(where.str() + ": operation list is empty");
    }
    if (job.arrival < 0) {
      report(where.str() + ": arrival time must be non-negative, got " +
             std::to_string(job.arrival));
    }
    if (job.utility < 0) {
      report(where.str() + ": utility must be non-negative, got " +
             std::to_string(job.utility));
    }
    for (std::size_t k = 0; k < job.operations.size(); ++k) {
      const OperationSpec& op = job.operations[k];
      std::ostringstream op_where;
      op_where << "job " << i << " operation " << k;
      if (op.duration < 1) {
        report(op_where.str() + ": duration must be >= 1, got " +
               std::to_string(op.duration));
      }
      if (op.machine < 0 || op.machine >= instance.machine_count()) {
        report(op_where.str() + ": machine " + std::to_string(op.machine) +
               " outside range [0, " + std::to_string(instance.machine_count()) + ")");
      }
    }
  }
  return violations;
}

}  // namespace jobset
