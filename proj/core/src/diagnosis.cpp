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

#include "jobset/diagnosis.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <utility>

#include "jobset/errors.hpp"

namespace jobset {

namespace {
// Fallback node cap per consistency check when the caller sets no limit at
// all; the tree searches require a total predicate that eventually answers
// or aborts.
constexpr std::int64_t kDefaultCheckNodes = 500'000'000;
}  // namespace

Epsilon Epsilon::absolute(Time value) {
  if (value < 0) throw PreconditionError("epsilon must be non-negative");
  Epsilon e;
  e.absolute_ = value;
  return e;
}

Epsilon Epsilon::ratio(double value) {
  if (value < 0.0) throw PreconditionError("epsilon ratio must be non-negative");
  Epsilon e;
  e.ratio_ = value;
  return e;
}

Time Epsilon::effective(Time kappa) const {
  if (!ratio_) return absolute_;
  return static_cast<Time>(std::floor(static_cast<double>(kappa) * *ratio_));
}

DiagnosisEngine::DiagnosisEngine(DiagnosisProblem problem)
    : DiagnosisEngine(std::move(problem), JobSet{}) {}

DiagnosisEngine::DiagnosisEngine(DiagnosisProblem problem, JobSet universe)
    : problem_(std::move(problem)) {
  const int n = problem_.instance.job_count();
  if (problem_.background.universe_size() == 0) problem_.background = JobSet(n);
  if (problem_.background.universe_size() != n) {
    throw PreconditionError("background job set does not match the instance");
  }
  universe_ = universe.universe_size() == 0 && n > 0 ? JobSet::all(n) : std::move(universe);
  if (universe_.universe_size() != n) {
    throw PreconditionError("universe job set does not match the instance");
  }
  if (!problem_.background.is_subset_of(universe_)) {
    throw PreconditionError("background jobs must be part of the universe");
  }
  if (problem_.kappa < 0) throw PreconditionError("kappa must be non-negative");
  if (!problem_.budget.has_limit()) problem_.budget.max_nodes = kDefaultCheckNodes;
  removable_ = universe_.difference(problem_.background);
}

bool DiagnosisEngine::keep_consistent(const JobSet& kept) {
  if (kept.universe_size() != problem_.instance.job_count()) {
    throw PreconditionError("kept job set does not match the instance");
  }
  if (!problem_.background.is_subset_of(kept)) {
    throw PreconditionError("every background job must be kept");
  }
  if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
    throw BudgetExhaustedError("deadline reached before consistency check");
  }
  const CheckOutcome outcome =
      decide_makespan_le(problem_.instance, kept, problem_.threshold(), problem_.budget);
  ++stats_.consistency_checks;
  stats_.solver_nodes += outcome.stats().nodes;
  if (outcome.is_exhausted()) {
    throw BudgetExhaustedError("consistency check budget exhausted",
                               outcome.best_lower_bound(), outcome.best_upper_bound());
  }
  const bool verdict = outcome.is_consistent();
  if (verdict) last_witness_ = outcome.witness();
  if (observer_) observer_(kept, verdict);
  return verdict;
}

bool DiagnosisEngine::verify_solvability() { return keep_consistent(problem_.background); }

bool DiagnosisEngine::pred_counted(const JobSet& kept) {
  ++stats_.msmp_checks;
  return keep_consistent(kept);
}

JobSet DiagnosisEngine::msmp_minimal_subset(const std::vector<int>& candidates,
                                            const std::function<bool(const JobSet&)>& pred) {
  const int n = problem_.instance.job_count();
  if (pred(JobSet(n))) return JobSet(n);
  if (candidates.empty()) {
    throw Error("internal error: monotone predicate fails on the full candidate set");
  }
  return msmp_core(JobSet(n), candidates, false, pred);
}

JobSet DiagnosisEngine::msmp_core(JobSet base, const std::vector<int>& candidates,
                                  bool base_changed,
                                  const std::function<bool(const JobSet&)>& pred) {
  if (base_changed && pred(base)) return JobSet(problem_.instance.job_count());
  if (candidates.size() == 1) {
    return JobSet::from_ids(problem_.instance.job_count(), candidates);
  }
  const std::size_t half = candidates.size() / 2;
  const std::vector<int> left(candidates.begin(),
                              candidates.begin() + static_cast<std::ptrdiff_t>(half));
  const std::vector<int> right(candidates.begin() + static_cast<std::ptrdiff_t>(half),
                               candidates.end());

  JobSet base_plus_left = base;
  for (int j : left) base_plus_left.insert(j);
  const JobSet d2 = msmp_core(std::move(base_plus_left), right, !left.empty(), pred);

  const JobSet d1 = msmp_core(base.union_with(d2), left, !d2.empty(), pred);
  return d1.union_with(d2);
}

std::optional<JobSet> DiagnosisEngine::conflict_within(const JobSet& candidates) {
  const JobSet& background = problem_.background;
  auto pred = [this, &background](const JobSet& part) {
    return !pred_counted(background.union_with(part));
  };
  if (!pred(candidates)) return std::nullopt;  // everything fits: no conflict
  return msmp_minimal_subset(candidates.ids(), pred);
}

JobSet DiagnosisEngine::diagnosis_within(const JobSet& candidates) {
  auto pred = [this](const JobSet& part) {
    return pred_counted(universe_.difference(part));
  };
  return msmp_minimal_subset(candidates.ids(), pred);
}

std::optional<Conflict> DiagnosisEngine::minimal_conflict(const JobSet& candidates) {
  if (candidates.universe_size() != problem_.instance.job_count()) {
    throw PreconditionError("candidate job set does not match the instance");
  }
  if (candidates.intersects(problem_.background)) {
    throw PreconditionError("conflict candidates must not overlap the background");
  }
  if (!candidates.is_subset_of(removable_)) {
    throw PreconditionError("conflict candidates must lie inside the universe");
  }
  stats_.msmp_checks = 0;
  std::optional<JobSet> result = conflict_within(candidates);
  if (!result) return std::nullopt;
  if (std::find(conflict_cache_.begin(), conflict_cache_.end(), *result) ==
      conflict_cache_.end()) {
    conflict_cache_.push_back(*result);
  }
  return Conflict{*std::move(result)};
}

Diagnosis DiagnosisEngine::make_diagnosis(const JobSet& removed) {
  Diagnosis diagnosis;
  diagnosis.removed = removed;
  const JobSet kept = universe_.difference(removed);
  if (!keep_consistent(kept)) {
    throw Error("internal error: candidate diagnosis does not restore consistency");
  }
  diagnosis.kept_utility = problem_.instance.total_utility(kept);
  diagnosis.witness = last_witness_;
  return diagnosis;
}

Diagnosis DiagnosisEngine::minimize(const JobSet& candidate) {
  if (candidate.universe_size() != problem_.instance.job_count()) {
    throw PreconditionError("candidate job set does not match the instance");
  }
  if (candidate.intersects(problem_.background)) {
    throw PreconditionError("candidate removals must not overlap the background");
  }
  if (!candidate.is_subset_of(removable_)) {
    throw PreconditionError("candidate removals must lie inside the universe");
  }
  stats_.msmp_checks = 0;
  if (!pred_counted(universe_.difference(candidate))) {
    throw PreconditionError("removing the candidate set does not restore consistency");
  }
  const JobSet removed = diagnosis_within(candidate);
  if (std::find(diagnosis_cache_.begin(), diagnosis_cache_.end(), removed) ==
      diagnosis_cache_.end()) {
    diagnosis_cache_.push_back(removed);
  }
  return make_diagnosis(removed);
}

Diagnosis DiagnosisEngine::jmp_solve() {
  // Inverse QuickXPlain. The solvability pretest doubles as the predicate
  // evaluation on the full removable set, so it is counted with the run.
  stats_.msmp_checks = 0;
  if (!pred_counted(problem_.background)) {
    throw NoSolutionError("background jobs alone cannot meet the deadline");
  }
  const JobSet removed = diagnosis_within(removable_);
  if (std::find(diagnosis_cache_.begin(), diagnosis_cache_.end(), removed) ==
      diagnosis_cache_.end()) {
    diagnosis_cache_.push_back(removed);
  }
  return make_diagnosis(removed);
}

// ---------------------------------------------------------------------------
// Hitting-set tree search (Reiter's construction with the usual corrections:
// set-equal node merging, closing against found solutions, label reuse).
//
// The same machinery runs in two directions over the conflict/diagnosis
// duality:
//   primal: labels are minimal conflicts, paths collect removed jobs, a node
//           with no label is a minimal diagnosis;
//   dual:   labels are minimal diagnoses (inverse QuickXPlain), paths collect
//           must-keep jobs, a node with no label is a minimal conflict.
// Minimal diagnoses are exactly the minimal hitting sets of the minimal
// conflicts and vice versa, so a drained frontier certifies that the
// solutions found are the complete family, and every member of the label
// family appears in the label cache before the tree closes.
// ---------------------------------------------------------------------------
class HittingSetSearch {
 public:
  enum class Direction { kPrimal, kDual };

  struct Result {
    std::vector<JobSet> solutions;  // pop order: cost, then cardinality, then lex
    bool complete = false;
  };

  HittingSetSearch(DiagnosisEngine& engine, Direction direction, CostMode cost_mode,
                   std::optional<int> depth_limit)
      : engine_(engine),
        direction_(direction),
        cost_mode_(cost_mode),
        depth_limit_(depth_limit) {}

  // Stops early once `max_solutions` solutions popped (0 = run to closure) or
  // once the label cache holds `max_labels` entries (0 = ignore).
  Result run(int max_solutions, int max_labels) {
    Result result;
    const int n = engine_.problem().instance.job_count();

    auto after = [](const Node& a, const Node& b) {
      if (a.cost != b.cost) return a.cost > b.cost;
      if (a.depth != b.depth) return a.depth > b.depth;
      return JobSet::lex_less(b.path, a.path);
    };
    std::priority_queue<Node, std::vector<Node>, decltype(after)> frontier(after);
    std::set<std::vector<std::uint64_t>> seen;

    const JobSet root(n);
    frontier.push(Node{0, 0, root});
    seen.insert(root.words());

    if (max_labels > 0 && static_cast<int>(label_cache().size()) >= max_labels) {
      return result;  // enough labels known before expanding anything
    }

    while (!frontier.empty()) {
      const Node node = frontier.top();
      frontier.pop();

      if (is_closed(node.path, result.solutions)) continue;

      const std::optional<JobSet> label = label_for(node.path);
      if (!label) {
        result.solutions.push_back(node.path);
        merge_solution(node.path);
        if (max_solutions > 0 &&
            static_cast<int>(result.solutions.size()) >= max_solutions) {
          return result;
        }
        continue;
      }
      if (max_labels > 0 && static_cast<int>(label_cache().size()) >= max_labels) {
        return result;
      }
      if (depth_limit_ && node.depth + 1 > *depth_limit_) continue;

      for (int job : label->ids()) {
        JobSet child = node.path.with(job);
        if (!seen.insert(child.words()).second) continue;
        frontier.push(Node{node.cost + edge_cost(job), node.depth + 1, std::move(child)});
      }
    }
    result.complete = true;
    return result;
  }

 private:
  struct Node {
    std::int64_t cost;
    int depth;
    JobSet path;
  };

  std::vector<JobSet>& label_cache() {
    return direction_ == Direction::kPrimal ? engine_.conflict_cache_
                                            : engine_.diagnosis_cache_;
  }
  std::vector<JobSet>& solution_cache() {
    return direction_ == Direction::kPrimal ? engine_.diagnosis_cache_
                                            : engine_.conflict_cache_;
  }

  static bool is_closed(const JobSet& path, const std::vector<JobSet>& solutions) {
    for (const JobSet& s : solutions) {
      if (s.is_subset_of(path)) return true;
    }
    return false;
  }

  // Solutions of one direction are labels of the other; keep both caches warm.
  void merge_solution(const JobSet& solution) {
    auto& cache = solution_cache();
    if (std::find(cache.begin(), cache.end(), solution) == cache.end()) {
      cache.push_back(solution);
    }
  }

  std::int64_t edge_cost(int job) const {
    if (direction_ == Direction::kDual || cost_mode_ == CostMode::kUniform) return 1;
    return engine_.problem().instance.job(job).utility;
  }

  // Reuses any cached label disjoint from the path before paying for a fresh
  // QuickXPlain run. nullopt marks the node as a solution.
  std::optional<JobSet> label_for(const JobSet& path) {
    for (const JobSet& cached : label_cache()) {
      if (!cached.intersects(path)) return cached;
    }
    const JobSet candidates = engine_.removable_.difference(path);
    if (direction_ == Direction::kPrimal) {
      std::optional<Conflict> conflict = engine_.minimal_conflict(candidates);
      if (!conflict) return std::nullopt;
      return std::move(conflict->jobs);
    }
    // Dual: a diagnosis disjoint from the path exists iff keeping the path
    // (plus background) alone is schedulable.
    engine_.stats_.msmp_checks = 0;
    if (!engine_.pred_counted(engine_.problem().background.union_with(path))) {
      return std::nullopt;
    }
    JobSet diagnosis = engine_.diagnosis_within(candidates);
    auto& cache = label_cache();
    if (std::find(cache.begin(), cache.end(), diagnosis) == cache.end()) {
      cache.push_back(diagnosis);
    }
    return diagnosis;
  }

  DiagnosisEngine& engine_;
  Direction direction_;
  CostMode cost_mode_;
  std::optional<int> depth_limit_;
};

std::vector<Conflict> DiagnosisEngine::enumerate_minimal_conflicts(int cap, bool* complete) {
  if (cap < 1) throw PreconditionError("conflict cap must be >= 1");
  HittingSetSearch search(*this, HittingSetSearch::Direction::kDual, CostMode::kUniform,
                          std::nullopt);
  const auto result = search.run(cap, 0);
  if (complete) *complete = result.complete;
  std::vector<Conflict> conflicts;
  conflicts.reserve(result.solutions.size());
  for (const JobSet& s : result.solutions) conflicts.push_back(Conflict{s});
  return conflicts;
}

std::vector<Diagnosis> DiagnosisEngine::jmp_enumerate(int n, bool* complete) {
  if (n < 1) throw PreconditionError("diagnosis count must be >= 1");
  HittingSetSearch search(*this, HittingSetSearch::Direction::kDual, CostMode::kUniform,
                          std::nullopt);
  // Budget exhaustion surfaces the diagnoses found so far behind
  // complete=false instead of discarding them.
  bool closed = false;
  try {
    closed = search.run(0, n).complete;
  } catch (const BudgetExhaustedError&) {
  }
  const bool all_found = closed && static_cast<int>(diagnosis_cache_.size()) <= n;
  if (complete) *complete = all_found;
  std::vector<Diagnosis> out;
  const int take = std::min<int>(n, static_cast<int>(diagnosis_cache_.size()));
  out.reserve(static_cast<std::size_t>(take));
  for (int i = 0; i < take; ++i) {
    try {
      out.push_back(make_diagnosis(diagnosis_cache_[i]));
    } catch (const BudgetExhaustedError&) {
      Diagnosis bare;
      bare.removed = diagnosis_cache_[i];
      bare.kept_utility =
          problem_.instance.total_utility(universe_.difference(bare.removed));
      out.push_back(std::move(bare));
    }
  }
  return out;
}

Diagnosis DiagnosisEngine::jop_solve(CostMode mode, std::optional<int> depth_limit) {
  if (depth_limit && *depth_limit < 0) {
    throw PreconditionError("depth limit must be non-negative");
  }
  if (!verify_solvability()) {
    throw NoSolutionError("background jobs alone cannot meet the deadline");
  }
  HittingSetSearch search(*this, HittingSetSearch::Direction::kPrimal, mode, depth_limit);
  const auto result = search.run(1, 0);
  if (result.solutions.empty()) {
    if (depth_limit) {
      throw NoSolutionWithinDepthError("no diagnosis within depth " +
                                       std::to_string(*depth_limit));
    }
    throw NoSolutionError("no diagnosis found");
  }
  return make_diagnosis(result.solutions.front());
}

int eminc_job(const std::vector<Conflict>& conflicts) {
  if (conflicts.empty()) throw PreconditionError("eminc requires at least one conflict");
  const int n = conflicts.front().jobs.universe_size();
  if (n == 0) throw PreconditionError("eminc requires conflicts over a non-empty universe");
  std::vector<int> occurrences(static_cast<std::size_t>(n), 0);
  for (const Conflict& c : conflicts) {
    for (int j : c.jobs.ids()) ++occurrences[static_cast<std::size_t>(j)];
  }
  int best = 0;
  for (int j = 1; j < n; ++j) {
    if (occurrences[static_cast<std::size_t>(j)] > occurrences[static_cast<std::size_t>(best)]) {
      best = j;
    }
  }
  return best;
}

bool consistent(const DiagnosisProblem& problem, const JobSet& kept) {
  DiagnosisEngine engine(problem);
  return engine.keep_consistent(kept);
}

bool verify_solvability(const DiagnosisProblem& problem) {
  DiagnosisEngine engine(problem);
  return engine.verify_solvability();
}

std::optional<Conflict> quickxplain_conflict(const DiagnosisProblem& problem,
                                             const JobSet& candidates) {
  DiagnosisEngine engine(problem);
  return engine.minimal_conflict(candidates);
}

std::vector<Conflict> enumerate_minimal_conflicts(const DiagnosisProblem& problem, int cap) {
  DiagnosisEngine engine(problem);
  return engine.enumerate_minimal_conflicts(cap);
}

Diagnosis jmp_solve(const DiagnosisProblem& problem) {
  DiagnosisEngine engine(problem);
  return engine.jmp_solve();
}

std::vector<Diagnosis> jmp_enumerate(const DiagnosisProblem& problem, int n) {
  DiagnosisEngine engine(problem);
  return engine.jmp_enumerate(n);
}

Diagnosis jop_solve(const DiagnosisProblem& problem, CostMode mode,
                    std::optional<int> depth_limit) {
  DiagnosisEngine engine(problem);
  return engine.jop_solve(mode, depth_limit);
}

}  // namespace jobset
