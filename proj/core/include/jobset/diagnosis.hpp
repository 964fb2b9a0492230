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
#include <functional>
#include <optional>
#include <vector>

#include "jobset/instance.hpp"
#include "jobset/schedule.hpp"
#include "jobset/solver.hpp"

namespace jobset {

// Tolerance that widens the deadline kappa to the effective check threshold
// tau = kappa + effective(kappa). Either an absolute amount of time units or
// a ratio of kappa (rounded down).
class Epsilon {
 public:
  Epsilon() = default;

  static Epsilon absolute(Time value);
  static Epsilon ratio(double value);

  Time effective(Time kappa) const;
  bool is_ratio() const { return ratio_.has_value(); }
  Time absolute_value() const { return absolute_; }
  double ratio_value() const { return ratio_.value_or(0.0); }

 private:
  Time absolute_ = 0;
  std::optional<double> ratio_;
};

// A deadline question over one instance: which jobs can be kept so that some
// schedule finishes within kappa (checked at tau = kappa + epsilon)?
// Background jobs must appear in every schedule and never in a conflict or
// diagnosis. The budget limits each individual consistency check.
struct DiagnosisProblem {
  JobShopInstance instance;
  Time kappa = 0;
  Epsilon epsilon;
  JobSet background;
  SearchBudget budget = SearchBudget::unlimited();

  Time threshold() const { return kappa + epsilon.effective(kappa); }
};

// A minimal set of jobs (disjoint from the background) that cannot all be
// kept: scheduling background + jobs within tau is impossible, while dropping
// any single member makes it possible.
struct Conflict {
  JobSet jobs;
  bool operator==(const Conflict&) const = default;
};

// A minimal set of removed jobs whose complement is schedulable within tau.
// kept_utility sums the utilities of all kept jobs (background included).
struct Diagnosis {
  JobSet removed;
  std::int64_t kept_utility = 0;
  std::optional<Schedule> witness;
};

struct DiagnosisStats {
  std::int64_t consistency_checks = 0;  // every predicate evaluation issued
  std::int64_t msmp_checks = 0;         // checks inside the latest QuickXPlain core run
  std::int64_t solver_nodes = 0;        // branch-and-bound nodes across all checks
};

enum class CostMode { kUniform, kUtility };

// Stateful facade over one DiagnosisProblem: owns the consistency predicate,
// the conflict cache shared by the tree searches, instrumentation counters,
// and an optional wall-clock deadline spanning a whole solve. The optional
// universe restricts the participating jobs (used by layered strategies);
// jobs outside the universe are treated as removed everywhere.
class DiagnosisEngine {
 public:
  explicit DiagnosisEngine(DiagnosisProblem problem);
  DiagnosisEngine(DiagnosisProblem problem, JobSet universe);

  const DiagnosisProblem& problem() const { return problem_; }
  const JobSet& universe() const { return universe_; }
  const JobSet& removable() const { return removable_; }
  const DiagnosisStats& stats() const { return stats_; }

  // Aborts any in-flight solve with BudgetExhaustedError once passed.
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) {
    deadline_ = deadline;
  }

  // Observes every consistency check (kept set, verdict). Used by tests.
  void set_check_observer(std::function<void(const JobSet&, bool)> observer) {
    observer_ = std::move(observer);
  }

  // The monotone predicate: can `kept` (which must include the background)
  // be scheduled within tau? Budget exhaustion is a hard error, never a
  // verdict.
  bool keep_consistent(const JobSet& kept);

  // True iff the background alone is schedulable within tau. Every solve
  // entry point runs this first and refuses to search when it fails.
  bool verify_solvability();

  // QuickXPlain: none iff background + candidates is consistent, otherwise a
  // minimal conflict within `candidates` (which must avoid the background).
  std::optional<Conflict> minimal_conflict(const JobSet& candidates);

  // All minimal conflicts, up to `cap`. Complete (and flagged so) when the
  // underlying tree closes before the cap is reached.
  std::vector<Conflict> enumerate_minimal_conflicts(int cap, bool* complete = nullptr);

  // Inverse QuickXPlain: one subset-minimal diagnosis in a worst-case linear
  // number of consistency checks. Throws NoSolutionError when unsolvable.
  Diagnosis jmp_solve();

  // Up to `n` distinct subset-minimal diagnoses via repeated inverse
  // QuickXPlain calls arranged so no diagnosis is found twice; complete when
  // fewer than `n` exist. Budget exhaustion mid-run yields the partial list
  // with complete=false instead of throwing.
  std::vector<Diagnosis> jmp_enumerate(int n, bool* complete = nullptr);

  // Best-first hitting-set tree over lazily computed minimal conflicts.
  // Returns the diagnosis minimizing removed utility (uniform mode:
  // cardinality), which maximizes kept utility. With a depth limit, nodes
  // deeper than the limit are closed and NoSolutionWithinDepthError is
  // raised when that prunes every solution.
  Diagnosis jop_solve(CostMode mode, std::optional<int> depth_limit = std::nullopt);

  // Shrinks `candidate` (disjoint from the background) to a subset-minimal
  // diagnosis. Requires that removing all of `candidate` already restores
  // consistency (PreconditionError otherwise). Idempotent.
  Diagnosis minimize(const JobSet& candidate);

 private:
  friend class HittingSetSearch;

  // keep_consistent with the evaluation counted into stats_.msmp_checks.
  bool pred_counted(const JobSet& kept);

  // QuickXPlain core over a monotone predicate: a minimal subset of
  // `candidates` on which `pred` holds, given that pred(candidates) holds.
  // Every evaluation goes through stats_.msmp_checks.
  JobSet msmp_minimal_subset(const std::vector<int>& candidates,
                             const std::function<bool(const JobSet&)>& pred);
  JobSet msmp_core(JobSet base, const std::vector<int>& candidates, bool base_changed,
                   const std::function<bool(const JobSet&)>& pred);

  // QuickXPlain entry for conflicts: nullopt iff background + candidates is
  // schedulable, otherwise a minimal conflict within candidates.
  std::optional<JobSet> conflict_within(const JobSet& candidates);

  // Inverse QuickXPlain body: minimal removal within `candidates` whose
  // complement is schedulable. The caller must already have verified that
  // removing all of `candidates` restores consistency.
  JobSet diagnosis_within(const JobSet& candidates);

  Diagnosis make_diagnosis(const JobSet& removed);

  DiagnosisProblem problem_;
  JobSet universe_;
  JobSet removable_;
  DiagnosisStats stats_;
  std::vector<JobSet> conflict_cache_;   // minimal conflicts, discovery order
  std::vector<JobSet> diagnosis_cache_;  // minimal diagnoses, discovery order
  std::optional<Schedule> last_witness_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::function<void(const JobSet&, bool)> observer_;
};

// Job occurring in the most of the given conflicts, ties by lowest id.
// The conflict list must be non-empty.
int eminc_job(const std::vector<Conflict>& conflicts);

// Free-function forms over a throwaway engine.
bool consistent(const DiagnosisProblem& problem, const JobSet& kept);
bool verify_solvability(const DiagnosisProblem& problem);
std::optional<Conflict> quickxplain_conflict(const DiagnosisProblem& problem,
                                             const JobSet& candidates);
std::vector<Conflict> enumerate_minimal_conflicts(const DiagnosisProblem& problem, int cap);
Diagnosis jmp_solve(const DiagnosisProblem& problem);
std::vector<Diagnosis> jmp_enumerate(const DiagnosisProblem& problem, int n);
Diagnosis jop_solve(const DiagnosisProblem& problem, CostMode mode,
                    std::optional<int> depth_limit = std::nullopt);

}  // namespace jobset
