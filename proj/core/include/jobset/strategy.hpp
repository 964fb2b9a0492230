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

#include <optional>
#include <utility>
#include <vector>

#include "jobset/diagnosis.hpp"

namespace jobset {

// A strictly decreasing ladder of deadlines ending at the target kappa.
// Solving the relaxed levels first keeps each step's removal set small.
class KappaSchedule {
 public:
  explicit KappaSchedule(std::vector<Time> levels);

  // Interpolates geometrically from the all-jobs optimum down to the target;
  // collapses to a single level when kappa_star <= kappa or steps == 1.
  static KappaSchedule geometric(Time kappa_star, Time kappa, int steps);

  const std::vector<Time>& levels() const { return levels_; }
  Time target() const { return levels_.back(); }

 private:
  std::vector<Time> levels_;
};

// Solves one relaxed problem per level on the jobs remaining after earlier
// removals, unions the removals, and minimizes the union at the target
// deadline so the result is a subset-minimal diagnosis. Levels above the
// target use the cheap single-diagnosis solver unless `jop_per_level` asks
// for optimized removals per level.
Diagnosis iterative_kappa_solve(const DiagnosisProblem& problem,
                                const KappaSchedule& schedule, CostMode mode,
                                bool jop_per_level = false);

// Shrinks `candidate` to a subset-minimal diagnosis of the problem.
// Requires that removing all of `candidate` already restores consistency
// (PreconditionError otherwise). Idempotent.
Diagnosis minimize_diagnosis(const DiagnosisProblem& problem, const JobSet& candidate);

// Interactive narrowing of a diagnosis, one "should job j remain in the
// schedule?" question at a time. The question target is the job occurring in
// the most currently known minimal conflicts; conflicts are recomputed
// against the committed background/removals before each selection. Answers
// are final.
class OracleSession {
 public:
  explicit OracleSession(DiagnosisProblem problem, int conflict_cap = 32);

  // The next job to ask about, or nullopt once no conflict remains (the
  // committed removals then solve the problem). Throws BudgetExhaustedError.
  std::optional<int> next_query();

  // `keep`=true commits the job to the background, false removes it. The job
  // must be the pending query target. Throws UnsolvableError when an answer
  // strips the last job from some known conflict.
  void apply_answer(int job, bool keep);

  bool solved() const { return solved_; }
  const JobSet& committed_removed() const { return removed_; }
  const JobSet& committed_background() const { return extra_background_; }
  const std::vector<Conflict>& known_conflicts() const { return conflicts_; }
  const std::vector<std::pair<int, bool>>& transcript() const { return transcript_; }
  const DiagnosisProblem& problem() const { return problem_; }

  // Final subset-minimal diagnosis once solved (runs queries to completion is
  // the caller's job; finalize only minimizes the committed removals).
  Diagnosis finalize() const;

  // Drives a fresh session with a recorded transcript; the replay must ask
  // the same questions in the same order.
  static OracleSession replay(DiagnosisProblem problem,
                              const std::vector<std::pair<int, bool>>& transcript,
                              int conflict_cap = 32);

 private:
  DiagnosisEngine make_engine() const;
  void refresh_conflicts();

  DiagnosisProblem problem_;
  int conflict_cap_;
  std::vector<Conflict> conflicts_;
  JobSet removed_;
  JobSet extra_background_;
  std::vector<std::pair<int, bool>> transcript_;
  std::optional<int> pending_;
  bool solved_ = false;
  bool unsolvable_ = false;
};

}  // namespace jobset
