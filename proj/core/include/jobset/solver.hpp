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
#include <cstdint>
#include <optional>

#include "jobset/instance.hpp"
#include "jobset/schedule.hpp"

namespace jobset {

// Limits for one search call. Searches are exact when no limit bites; a hit
// limit surfaces as an Exhausted verdict (never as a wrong answer).
struct SearchBudget {
  std::optional<std::int64_t> max_nodes;
  std::optional<std::chrono::milliseconds> max_time;
  // With deterministic=true and a pure node budget, repeated calls produce
  // bit-identical verdicts, witnesses and node counts.
  bool deterministic = true;

  bool has_limit() const { return max_nodes.has_value() || max_time.has_value(); }

  static SearchBudget nodes(std::int64_t n) {
    SearchBudget b;
    b.max_nodes = n;
    return b;
  }
  static SearchBudget unlimited() { return SearchBudget{}; }
};

struct SearchStats {
  std::int64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

// Verdict of the makespan decision question "is there a consistent schedule
// of the subset with makespan <= tau?".
class CheckOutcome {
 public:
  enum class Verdict { kConsistent, kInconsistent, kExhausted };

  static CheckOutcome consistent(Schedule witness, Time witness_makespan, SearchStats stats);
  static CheckOutcome inconsistent(Time certified_lower_bound, SearchStats stats);
  static CheckOutcome exhausted(std::optional<Time> best_upper_bound, Time best_lower_bound,
                                SearchStats stats);

  Verdict verdict() const { return verdict_; }
  bool is_consistent() const { return verdict_ == Verdict::kConsistent; }
  bool is_inconsistent() const { return verdict_ == Verdict::kInconsistent; }
  bool is_exhausted() const { return verdict_ == Verdict::kExhausted; }

  // Only for kConsistent: a schedule whose makespan is <= the queried tau.
  const Schedule& witness() const { return witness_; }
  Time witness_makespan() const { return witness_makespan_; }

  // Only for kInconsistent: a proven lower bound on the optimum, > tau.
  Time certified_lower_bound() const { return lower_bound_; }

  // Only for kExhausted: the tightest bounds proven before the budget ran out.
  std::optional<Time> best_upper_bound() const { return upper_bound_; }
  Time best_lower_bound() const { return lower_bound_; }

  const SearchStats& stats() const { return stats_; }

 private:
  Verdict verdict_ = Verdict::kExhausted;
  Schedule witness_;
  Time witness_makespan_ = 0;
  Time lower_bound_ = 0;
  std::optional<Time> upper_bound_;
  SearchStats stats_;
};

// Root relaxation: the larger of the heaviest per-machine load of the subset
// and the longest arrival-plus-chain over its jobs. Never exceeds the optimum.
Time lower_bound(const JobShopInstance& instance, const JobSet& subset);

// Giffler-Thompson dispatching with the most-work-remaining rule, ties by
// lowest job id. Always returns a consistent active schedule of the subset.
std::pair<Schedule, Time> heuristic_schedule(const JobShopInstance& instance,
                                             const JobSet& subset);

// Exact decision procedure via depth-first branch and bound over active
// schedules. Accepts on the first complete schedule with makespan <= tau,
// prunes nodes whose bound exceeds tau, and reports Exhausted with the bounds
// proven so far when the budget runs out first.
CheckOutcome decide_makespan_le(const JobShopInstance& instance, const JobSet& subset,
                                Time tau, const SearchBudget& budget = SearchBudget::unlimited());

struct OptimizeResult {
  Schedule schedule;
  Time makespan = 0;
  bool proven_optimal = false;
  SearchStats stats;
};

// Anytime branch-and-bound minimization of the makespan. The returned
// schedule is always consistent; proven_optimal is true iff the search
// closed the gap within the budget.
OptimizeResult optimize_makespan(const JobShopInstance& instance, const JobSet& subset,
                                 const SearchBudget& budget = SearchBudget::unlimited());

}  // namespace jobset
