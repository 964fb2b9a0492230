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

#include <vector>

#include "jobset/brute_force.hpp"
#include "jobset/diagnosis.hpp"
#include "jobset/instance.hpp"
#include "jobset/io.hpp"
#include "jobset/schedule.hpp"

namespace jobset::testing {

// The worked 4-job / 3-machine fixture: optimal makespan 9; at deadline 6 the
// minimal conflicts are {0,3} and {2,3} and the minimal diagnoses {3} and
// {0,2}; with utilities <2,3,1,4> the best diagnosis is {0,2} (kept utility 7).
inline JobShopInstance golden_instance() {
  std::vector<JobSpec> jobs(4);
  jobs[0] = JobSpec{0, {{0, 2}, {1, 2}, {2, 2}}, 0, 1};
  jobs[1] = JobSpec{1, {{1, 2}, {2, 2}, {0, 2}}, 0, 1};
  jobs[2] = JobSpec{2, {{2, 2}, {0, 2}, {1, 2}}, 0, 1};
  jobs[3] = JobSpec{3, {{0, 3}, {1, 2}, {2, 1}}, 0, 1};
  return JobShopInstance(std::move(jobs), 3);
}

inline JobShopInstance golden_instance_with_utilities() {
  JobShopInstance base = golden_instance();
  std::vector<JobSpec> jobs = base.jobs();
  jobs[0].utility = 2;
  jobs[1].utility = 3;
  jobs[2].utility = 1;
  jobs[3].utility = 4;
  return JobShopInstance(std::move(jobs), base.machine_count());
}

// A concrete optimal schedule of all four jobs (makespan 9).
inline Schedule golden_optimal_schedule() {
  Schedule s;
  s.set_start(0, 0, 0);
  s.set_start(0, 1, 2);
  s.set_start(0, 2, 4);
  s.set_start(1, 0, 0);
  s.set_start(1, 1, 2);
  s.set_start(1, 2, 7);
  s.set_start(2, 0, 0);
  s.set_start(2, 1, 5);
  s.set_start(2, 2, 7);
  s.set_start(3, 0, 2);
  s.set_start(3, 1, 5);
  s.set_start(3, 2, 7);
  return s;
}

// Optimal schedule of jobs {1, 3} (makespan 6).
inline Schedule golden_schedule_jobs_1_3() {
  Schedule s;
  s.set_start(3, 0, 0);
  s.set_start(3, 1, 3);
  s.set_start(3, 2, 5);
  s.set_start(1, 0, 0);
  s.set_start(1, 1, 2);
  s.set_start(1, 2, 4);
  return s;
}

inline DiagnosisProblem golden_problem(Time kappa, Epsilon epsilon = {},
                                       JobSet background = {}) {
  DiagnosisProblem problem;
  problem.instance = golden_instance();
  problem.kappa = kappa;
  problem.epsilon = epsilon;
  if (background.universe_size() > 0) problem.background = std::move(background);
  problem.budget = SearchBudget::nodes(5'000'000);
  return problem;
}

// Seeded corpus entry with varied size and per-job utilities in 1..9.
inline JobShopInstance corpus_instance(int index, Time dur_min = 1, Time dur_max = 5) {
  const int jobs = 4 + index % 4;
  const int machines = 2 + index % 3;
  JobShopInstance base =
      generate_instance(static_cast<std::uint64_t>(1000 + index), jobs, machines, dur_min,
                        dur_max);
  std::vector<JobSpec> specs = base.jobs();
  std::uint64_t state = static_cast<std::uint64_t>(7919 * (index + 1));
  for (JobSpec& spec : specs) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    spec.utility = static_cast<std::int64_t>(state >> 33) % 9 + 1;
  }
  return JobShopInstance(std::move(specs), base.machine_count());
}

// Exact optimum of every subset of one small instance, computed once by the
// exhaustive active-schedule enumeration and indexed by bit mask.
class SubsetOracle {
 public:
  explicit SubsetOracle(JobShopInstance instance) : instance_(std::move(instance)) {
    const int n = instance_.job_count();
    optima_.resize(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < optima_.size(); ++mask) {
      JobSet subset(n);
      for (int j = 0; j < n; ++j) {
        if (mask & (std::size_t{1} << j)) subset.insert(j);
      }
      optima_[mask] = brute_force_optimal_makespan(instance_, subset);
    }
  }

  Time optimum(const JobSet& subset) const { return optima_[mask_of(subset)]; }
  bool feasible(const JobSet& subset, Time tau) const { return optimum(subset) <= tau; }
  Time full_optimum() const { return optima_.back(); }

  // Highest kept utility over all subsets schedulable within tau.
  std::int64_t best_kept_utility(Time tau, const JobSet& must_keep) const {
    std::int64_t best = -1;
    const int n = instance_.job_count();
    for (std::size_t mask = 0; mask < optima_.size(); ++mask) {
      if (optima_[mask] > tau) continue;
      JobSet kept(n);
      for (int j = 0; j < n; ++j) {
        if (mask & (std::size_t{1} << j)) kept.insert(j);
      }
      if (!must_keep.is_subset_of(kept)) continue;
      best = std::max(best, instance_.total_utility(kept));
    }
    return best;
  }

  // Smallest removal count over all schedulable kept sets.
  int min_removal_size(Time tau, const JobSet& must_keep) const {
    const int n = instance_.job_count();
    int best = -1;
    for (std::size_t mask = 0; mask < optima_.size(); ++mask) {
      if (optima_[mask] > tau) continue;
      JobSet kept(n);
      for (int j = 0; j < n; ++j) {
        if (mask & (std::size_t{1} << j)) kept.insert(j);
      }
      if (!must_keep.is_subset_of(kept)) continue;
      const int removed = n - kept.count();
      if (best < 0 || removed < best) best = removed;
    }
    return best;
  }

 private:
  std::size_t mask_of(const JobSet& subset) const {
    std::size_t mask = 0;
    for (int j : subset.ids()) mask |= std::size_t{1} << j;
    return mask;
  }

  JobShopInstance instance_;
  std::vector<Time> optima_;
};

}  // namespace jobset::testing
