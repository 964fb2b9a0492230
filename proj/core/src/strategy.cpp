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

#include "jobset/strategy.hpp"

#include <algorithm>
#include <cmath>

#include "jobset/errors.hpp"

namespace jobset {

KappaSchedule::KappaSchedule(std::vector<Time> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw PreconditionError("kappa schedule must be non-empty");
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (levels_[i] >= levels_[i - 1]) {
      throw PreconditionError("kappa schedule must be strictly decreasing");
    }
  }
  if (levels_.back() < 0) throw PreconditionError("kappa must be non-negative");
}

KappaSchedule KappaSchedule::geometric(Time kappa_star, Time kappa, int steps) {
  if (steps < 1) throw PreconditionError("step count must be >= 1");
  if (kappa_star <= kappa || steps == 1) return KappaSchedule({kappa});
  // Interpolate on log(1 + kappa) so a zero target stays well defined.
  const double hi = std::log(static_cast<double>(kappa_star) + 1.0);
  const double lo = std::log(static_cast<double>(kappa) + 1.0);
  std::vector<Time> levels;
  Time previous = kappa_star;
  for (int i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    Time level = static_cast<Time>(std::floor(std::exp(hi + (lo - hi) * t))) - 1;
    level = std::clamp<Time>(level, kappa, previous - 1);
    if (i == steps) level = kappa;
    if (level >= previous) continue;            // rounding collision
    if (level == kappa && i < steps) continue;  // the target is always the last level
    levels.push_back(level);
    previous = level;
  }
  if (levels.empty() || levels.back() != kappa) levels.push_back(kappa);
  return KappaSchedule(std::move(levels));
}

Diagnosis iterative_kappa_solve(const DiagnosisProblem& problem,
                                const KappaSchedule& schedule, CostMode mode,
                                bool jop_per_level) {
  if (schedule.target() != problem.kappa) {
    throw PreconditionError("kappa schedule must end at the problem's kappa");
  }
  if (!verify_solvability(problem)) {
    throw NoSolutionError("background jobs alone cannot meet the deadline");
  }

  const JobSet all = problem.instance.all_jobs();
  JobSet removed_union(problem.instance.job_count());
  for (Time level : schedule.levels()) {
    DiagnosisProblem relaxed = problem;
    relaxed.kappa = level;
    DiagnosisEngine engine(relaxed, all.difference(removed_union));
    const Diagnosis step = jop_per_level ? engine.jop_solve(mode) : engine.jmp_solve();
    removed_union = removed_union.union_with(step.removed);
  }
  // The union is consistent at the target (the last level is the target) but
  // not necessarily minimal; one shrink establishes minimality.
  return minimize_diagnosis(problem, removed_union);
}

Diagnosis minimize_diagnosis(const DiagnosisProblem& problem, const JobSet& candidate) {
  DiagnosisEngine engine(problem);
  return engine.minimize(candidate);
}

OracleSession::OracleSession(DiagnosisProblem problem, int conflict_cap)
    : problem_(std::move(problem)), conflict_cap_(conflict_cap) {
  if (conflict_cap_ < 1) throw PreconditionError("conflict cap must be >= 1");
  const int n = problem_.instance.job_count();
  if (problem_.background.universe_size() == 0) problem_.background = JobSet(n);
  removed_ = JobSet(n);
  extra_background_ = JobSet(n);
}

DiagnosisEngine OracleSession::make_engine() const {
  DiagnosisProblem current = problem_;
  current.background = problem_.background.union_with(extra_background_);
  return DiagnosisEngine(std::move(current),
                         problem_.instance.all_jobs().difference(removed_));
}

void OracleSession::refresh_conflicts() {
  DiagnosisEngine engine = make_engine();
  // Answers only strip or discard stored conflicts, which keeps them
  // conflicts but can lose minimality; shrink each against the current
  // commitments before using occurrence counts.
  std::vector<Conflict> fresh;
  for (const Conflict& stored : conflicts_) {
    std::optional<Conflict> shrunk = engine.minimal_conflict(stored.jobs);
    if (!shrunk) continue;
    if (std::find(fresh.begin(), fresh.end(), *shrunk) == fresh.end()) {
      fresh.push_back(*std::move(shrunk));
    }
  }
  conflicts_ = std::move(fresh);
  if (conflicts_.empty()) {
    conflicts_ = engine.enumerate_minimal_conflicts(conflict_cap_);
  }
  // An empty conflict means the committed background alone is inconsistent.
  // That can surface lazily when the conflict that pinned a kept job was
  // never in the capped store.
  for (const Conflict& conflict : conflicts_) {
    if (conflict.jobs.empty()) {
      unsolvable_ = true;
      throw UnsolvableError("the committed background alone exceeds the deadline");
    }
  }
}

std::optional<int> OracleSession::next_query() {
  if (unsolvable_) throw UnsolvableError("a known conflict has all jobs committed kept");
  if (solved_) return std::nullopt;
  if (pending_) return pending_;
  refresh_conflicts();
  if (conflicts_.empty()) {
    solved_ = true;
    return std::nullopt;
  }
  pending_ = eminc_job(conflicts_);
  return pending_;
}

void OracleSession::apply_answer(int job, bool keep) {
  if (!pending_ || *pending_ != job) {
    throw PreconditionError("job " + std::to_string(job) + " is not the pending query");
  }
  pending_.reset();
  transcript_.emplace_back(job, keep);

  if (!keep) {
    removed_.insert(job);
    // Conflicts containing the removed job are hit and no longer conflicts.
    std::erase_if(conflicts_, [job](const Conflict& c) { return c.jobs.contains(job); });
    return;
  }

  extra_background_.insert(job);
  for (Conflict& c : conflicts_) {
    if (!c.jobs.contains(job)) continue;
    c.jobs.erase(job);
    if (c.jobs.empty()) {
      unsolvable_ = true;
      throw UnsolvableError("keeping job " + std::to_string(job) +
                            " leaves a conflict with no removable job");
    }
  }
}

Diagnosis OracleSession::finalize() const {
  if (unsolvable_) throw UnsolvableError("session is unsolvable");
  if (!solved_) throw PreconditionError("session has open queries");
  return minimize_diagnosis(problem_, removed_);
}

OracleSession OracleSession::replay(DiagnosisProblem problem,
                                    const std::vector<std::pair<int, bool>>& transcript,
                                    int conflict_cap) {
  OracleSession session(std::move(problem), conflict_cap);
  for (const auto& [job, keep] : transcript) {
    const std::optional<int> query = session.next_query();
    if (!query || *query != job) {
      throw PreconditionError("transcript diverges from the session's queries");
    }
    session.apply_answer(job, keep);
  }
  // Probe once so a finished transcript lands in the solved state, exactly as
  // the recording session did.
  (void)session.next_query();
  return session;
}

}  // namespace jobset
