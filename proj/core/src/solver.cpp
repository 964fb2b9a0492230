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

#include "jobset/solver.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "jobset/errors.hpp"

namespace jobset {

namespace {

constexpr Time kInfinity = std::numeric_limits<Time>::max() / 4;

// Mutable search state shared by the heuristic and the branch and bound:
// per-job chain frontiers and per-machine availability. Operations on a
// machine are placed left to right, so `machine_ready` is the completion of
// the last placed operation on that machine.
class SearchState {
 public:
  SearchState(const JobShopInstance& instance, const JobSet& subset)
      : instance_(instance),
        job_ids_(subset.ids()),
        machine_ready_(static_cast<std::size_t>(instance.machine_count()), 0) {
    next_op_.resize(job_ids_.size(), 0);
    job_ready_.resize(job_ids_.size());
    chain_rest_.resize(job_ids_.size());
    machine_rest_.resize(machine_ready_.size(), 0);
    for (std::size_t i = 0; i < job_ids_.size(); ++i) {
      const JobSpec& job = instance.job(job_ids_[i]);
      job_ready_[i] = job.arrival;
      chain_rest_[i] = job.duration_sum();
      remaining_ += static_cast<int>(job.operations.size());
      for (const OperationSpec& op : job.operations) {
        machine_rest_[static_cast<std::size_t>(op.machine)] += op.duration;
      }
    }
  }

  int remaining() const { return remaining_; }
  Time partial_makespan() const { return partial_makespan_; }
  const std::vector<int>& job_ids() const { return job_ids_; }

  const JobSpec& job(std::size_t i) const { return instance_.job(job_ids_[i]); }

  bool job_done(std::size_t i) const {
    return next_op_[i] >= static_cast<int>(job(i).operations.size());
  }

  const OperationSpec& candidate(std::size_t i) const {
    return job(i).operations[static_cast<std::size_t>(next_op_[i])];
  }

  Time earliest_start(std::size_t i) const {
    const OperationSpec& op = candidate(i);
    return std::max(job_ready_[i], machine_ready_[static_cast<std::size_t>(op.machine)]);
  }

  // Chain and machine-load relaxation below the current node. Sound because
  // every unplaced operation on a machine starts at or after that machine's
  // frontier, and every job continues at or after its chain frontier.
  Time node_bound() const {
    Time bound = partial_makespan_;
    for (std::size_t i = 0; i < job_ids_.size(); ++i) {
      bound = std::max(bound, job_ready_[i] + chain_rest_[i]);
    }
    for (std::size_t m = 0; m < machine_ready_.size(); ++m) {
      bound = std::max(bound, machine_ready_[m] + machine_rest_[m]);
    }
    return bound;
  }

  struct Placement {
    std::size_t position;
    Time saved_job_ready;
    Time saved_machine_ready;
    Time saved_partial_makespan;
  };

  Placement place(std::size_t i) {
    const OperationSpec& op = candidate(i);
    const std::size_t m = static_cast<std::size_t>(op.machine);
    const Time start = std::max(job_ready_[i], machine_ready_[m]);
    const Time end = start + op.duration;
    Placement undo{i, job_ready_[i], machine_ready_[m], partial_makespan_};
    starts_.emplace_back(OperationId{job_ids_[i], next_op_[i]}, start);
    job_ready_[i] = end;
    machine_ready_[m] = end;
    chain_rest_[i] -= op.duration;
    machine_rest_[m] -= op.duration;
    partial_makespan_ = std::max(partial_makespan_, end);
    ++next_op_[i];
    --remaining_;
    return undo;
  }

  void unplace(const Placement& undo) {
    const std::size_t i = undo.position;
    ++remaining_;
    --next_op_[i];
    const OperationSpec& op = candidate(i);
    const std::size_t m = static_cast<std::size_t>(op.machine);
    chain_rest_[i] += op.duration;
    machine_rest_[m] += op.duration;
    job_ready_[i] = undo.saved_job_ready;
    machine_ready_[m] = undo.saved_machine_ready;
    partial_makespan_ = undo.saved_partial_makespan;
    starts_.pop_back();
  }

  Schedule to_schedule() const {
    Schedule s;
    for (const auto& [key, start] : starts_) s.set_start(key.job, key.op, start);
    return s;
  }

  // Earliest completion over all candidates; identifies the branch machine.
  // Ties resolve to the lowest job id.
  std::pair<Time, int> earliest_completion() const {
    Time best = kInfinity;
    int machine = -1;
    for (std::size_t i = 0; i < job_ids_.size(); ++i) {
      if (job_done(i)) continue;
      const Time ect = earliest_start(i) + candidate(i).duration;
      if (ect < best) {
        best = ect;
        machine = candidate(i).machine;
      }
    }
    return {best, machine};
  }

  // Subset positions forming the conflict set of `machine` under `ect`.
  void conflict_set(Time ect, int machine, std::vector<std::size_t>* out) const {
    out->clear();
    for (std::size_t i = 0; i < job_ids_.size(); ++i) {
      if (job_done(i)) continue;
      if (candidate(i).machine != machine) continue;
      if (earliest_start(i) < ect) out->push_back(i);
    }
  }

 private:
  const JobShopInstance& instance_;
  std::vector<int> job_ids_;
  std::vector<int> next_op_;
  std::vector<Time> job_ready_;
  std::vector<Time> machine_ready_;
  std::vector<Time> chain_rest_;    // unplaced durations per job
  std::vector<Time> machine_rest_;  // unplaced durations per machine
  std::vector<std::pair<OperationId, Time>> starts_;
  int remaining_ = 0;
  Time partial_makespan_ = 0;
};

class DeadlineClock {
 public:
  explicit DeadlineClock(const SearchBudget& budget)
      : start_(std::chrono::steady_clock::now()) {
    if (budget.max_time) deadline_ = start_ + *budget.max_time;
  }

  bool expired(std::int64_t nodes) const {
    if (!deadline_) return false;
    if ((nodes & 1023) != 0) return false;  // check the clock sparingly
    return std::chrono::steady_clock::now() >= *deadline_;
  }

  std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

struct BudgetStop {};

// Depth-first branch and bound. In decision mode (`tau` set) it stops at the
// first leaf <= tau and otherwise tracks the minimum over closed bounds, which
// certifies a lower bound on the optimum once the tree is swept. In
// optimization mode it tightens the incumbent.
class BranchAndBound {
 public:
  BranchAndBound(const JobShopInstance& instance, const JobSet& subset,
                 const SearchBudget& budget)
      : state_(instance, subset), budget_(budget), clock_(budget) {}

  std::optional<Time> tau;  // decision threshold; nullopt = optimize

  Time incumbent_value = kInfinity;
  Schedule incumbent;
  bool found_accepting_leaf = false;
  Time min_closed_bound = kInfinity;  // over pruned bounds and leaf values
  std::int64_t nodes = 0;
  bool budget_hit = false;

  void seed_incumbent(Schedule schedule, Time value) {
    incumbent = std::move(schedule);
    incumbent_value = value;
  }

  void run() {
    if (state_.remaining() == 0) return;
    try {
      descend();
    } catch (const BudgetStop&) {
      budget_hit = true;
    }
  }

  std::chrono::milliseconds elapsed() const { return clock_.elapsed(); }

 private:
  bool over_budget() {
    if (budget_.max_nodes && nodes > *budget_.max_nodes) return true;
    return clock_.expired(nodes);
  }

  // Returns true when the caller should unwind (accepting leaf found).
  bool descend() {
    const Time bound = state_.node_bound();
    const Time cutoff = tau ? *tau : incumbent_value - 1;
    if (bound > cutoff) {
      min_closed_bound = std::min(min_closed_bound, bound);
      return false;
    }
    if (state_.remaining() == 0) {
      const Time value = state_.partial_makespan();
      if (value < incumbent_value) {
        incumbent_value = value;
        incumbent = state_.to_schedule();
      }
      if (tau && value <= *tau) {
        found_accepting_leaf = true;
        return true;
      }
      min_closed_bound = std::min(min_closed_bound, value);
      return false;
    }

    ++nodes;
    if (over_budget()) throw BudgetStop{};

    const auto [ect, machine] = state_.earliest_completion();
    std::vector<std::size_t> conflict;
    state_.conflict_set(ect, machine, &conflict);
    for (std::size_t i : conflict) {
      const auto undo = state_.place(i);
      const bool stop = descend();
      state_.unplace(undo);
      if (stop) return true;
    }
    return false;
  }

  SearchState state_;
  SearchBudget budget_;
  DeadlineClock clock_;
};

}  // namespace

CheckOutcome CheckOutcome::consistent(Schedule witness, Time witness_makespan,
                                      SearchStats stats) {
  CheckOutcome out;
  out.verdict_ = Verdict::kConsistent;
  out.witness_ = std::move(witness);
  out.witness_makespan_ = witness_makespan;
  out.upper_bound_ = witness_makespan;
  out.stats_ = stats;
  return out;
}

CheckOutcome CheckOutcome::inconsistent(Time certified_lower_bound, SearchStats stats) {
  CheckOutcome out;
  out.verdict_ = Verdict::kInconsistent;
  out.lower_bound_ = certified_lower_bound;
  out.stats_ = stats;
  return out;
}

CheckOutcome CheckOutcome::exhausted(std::optional<Time> best_upper_bound,
                                     Time best_lower_bound, SearchStats stats) {
  CheckOutcome out;
  out.verdict_ = Verdict::kExhausted;
  out.upper_bound_ = best_upper_bound;
  out.lower_bound_ = best_lower_bound;
  out.stats_ = stats;
  return out;
}

Time lower_bound(const JobShopInstance& instance, const JobSet& subset) {
  std::vector<Time> load(static_cast<std::size_t>(instance.machine_count()), 0);
  Time bound = 0;
  for (int id : subset.ids()) {
    const JobSpec& job = instance.job(id);
    for (const OperationSpec& op : job.operations) {
      load[static_cast<std::size_t>(op.machine)] += op.duration;
    }
    bound = std::max(bound, job.arrival + job.duration_sum());
  }
  for (Time l : load) bound = std::max(bound, l);
  return bound;
}

std::pair<Schedule, Time> heuristic_schedule(const JobShopInstance& instance,
                                             const JobSet& subset) {
  SearchState state(instance, subset);
  std::vector<std::size_t> conflict;
  std::vector<Time> work_remaining(state.job_ids().size());
  for (std::size_t i = 0; i < state.job_ids().size(); ++i) {
    work_remaining[i] = instance.job(state.job_ids()[i]).duration_sum();
  }

  while (state.remaining() > 0) {
    const auto [ect, machine] = state.earliest_completion();
    state.conflict_set(ect, machine, &conflict);
    // Most work remaining; the conflict set is in ascending job id order, so
    // a strict comparison keeps the lowest id on ties.
    std::size_t pick = conflict.front();
    for (std::size_t i : conflict) {
      if (work_remaining[i] > work_remaining[pick]) pick = i;
    }
    work_remaining[pick] -= state.candidate(pick).duration;
    state.place(pick);
  }
  const Time value = state.partial_makespan();
  return {state.to_schedule(), value};
}

CheckOutcome decide_makespan_le(const JobShopInstance& instance, const JobSet& subset,
                                Time tau, const SearchBudget& budget) {
  SearchStats stats;
  if (subset.empty()) {
    return tau >= 0 ? CheckOutcome::consistent(Schedule{}, 0, stats)
                    : CheckOutcome::inconsistent(0, stats);
  }

  const Time root_bound = lower_bound(instance, subset);
  if (root_bound > tau) return CheckOutcome::inconsistent(root_bound, stats);

  auto [greedy, greedy_value] = heuristic_schedule(instance, subset);
  if (greedy_value <= tau) {
    return CheckOutcome::consistent(std::move(greedy), greedy_value, stats);
  }

  BranchAndBound search(instance, subset, budget);
  search.tau = tau;
  search.seed_incumbent(std::move(greedy), greedy_value);
  search.run();

  stats.nodes = search.nodes;
  stats.elapsed = search.elapsed();

  if (search.found_accepting_leaf) {
    return CheckOutcome::consistent(std::move(search.incumbent), search.incumbent_value,
                                    stats);
  }
  if (search.budget_hit) {
    // Nothing beyond the root relaxation is certified for open branches.
    std::optional<Time> upper;
    if (search.incumbent_value < kInfinity) upper = search.incumbent_value;
    return CheckOutcome::exhausted(upper, root_bound, stats);
  }
  // Complete sweep: every branch closed above tau.
  const Time certified = std::max(root_bound, std::min(search.min_closed_bound, kInfinity));
  return CheckOutcome::inconsistent(certified, stats);
}

OptimizeResult optimize_makespan(const JobShopInstance& instance, const JobSet& subset,
                                 const SearchBudget& budget) {
  OptimizeResult result;
  if (subset.empty()) {
    result.proven_optimal = true;
    return result;
  }

  auto [greedy, greedy_value] = heuristic_schedule(instance, subset);
  const Time root_bound = lower_bound(instance, subset);

  BranchAndBound search(instance, subset, budget);
  search.seed_incumbent(std::move(greedy), greedy_value);
  if (greedy_value > root_bound) {
    search.run();
  }

  result.schedule = std::move(search.incumbent);
  result.makespan = search.incumbent_value;
  result.proven_optimal = !search.budget_hit;
  result.stats.nodes = search.nodes;
  result.stats.elapsed = search.elapsed();
  return result;
}

}  // namespace jobset
