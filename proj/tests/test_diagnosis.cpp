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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "jobset/diagnosis.hpp"
#include "jobset/errors.hpp"
#include "support/fixtures.hpp"

using namespace jobset;
using namespace jobset::testing;

namespace {

// Reference families computed by full subset enumeration against the
// exhaustive oracle; independent of QuickXPlain and the tree search.
struct ReferenceFamilies {
  std::vector<JobSet> conflicts;
  std::vector<JobSet> diagnoses;
};

ReferenceFamilies reference_families(const JobShopInstance& instance,
                                     const SubsetOracle& oracle, Time tau,
                                     const JobSet& background) {
  ReferenceFamilies out;
  const int n = instance.job_count();
  const JobSet removable = instance.all_jobs().difference(background);
  const std::vector<int> removable_ids = removable.ids();
  const int k = static_cast<int>(removable_ids.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    JobSet part(n);
    for (int i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) part.insert(removable_ids[static_cast<std::size_t>(i)]);
    }
    // Minimal conflict: keeping background+part fails, any proper subset works.
    if (!oracle.feasible(background.union_with(part), tau) && !part.empty()) {
      bool minimal = true;
      for (int j : part.ids()) {
        if (!oracle.feasible(background.union_with(part.without(j)), tau)) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.conflicts.push_back(part);
    }
    // Minimal diagnosis: removing part restores feasibility, no proper subset does.
    const JobSet kept = instance.all_jobs().difference(part);
    if (oracle.feasible(kept, tau)) {
      bool minimal = true;
      for (int j : part.ids()) {
        if (oracle.feasible(kept.with(j), tau)) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.diagnoses.push_back(part);
    }
  }
  return out;
}

bool same_family(std::vector<JobSet> a, std::vector<JobSet> b) {
  auto order = [](const JobSet& x, const JobSet& y) { return JobSet::lex_less(x, y); };
  std::sort(a.begin(), a.end(), order);
  std::sort(b.begin(), b.end(), order);
  return a == b;
}

}  // namespace

TEST_SUITE_BEGIN("diagnosis");

TEST_CASE("epsilon widens the threshold absolutely or relatively") {
  CHECK(Epsilon{}.effective(100) == 0);
  CHECK(Epsilon::absolute(3).effective(6) == 3);
  CHECK(Epsilon::ratio(0.05).effective(100) == 5);
  CHECK(Epsilon::ratio(0.05).effective(90) == 4);  // floor
  CHECK(golden_problem(6, Epsilon::absolute(3)).threshold() == 9);
  CHECK_THROWS_AS(Epsilon::absolute(-1), PreconditionError);
}

TEST_CASE("consistency of kept sets at deadline 6") {
  DiagnosisProblem problem = golden_problem(6);
  CHECK(consistent(problem, problem.instance.all_jobs().without(3)));
  CHECK_FALSE(consistent(problem, problem.instance.all_jobs()));
  CHECK(consistent(golden_problem(6, Epsilon::absolute(3)),
                   problem.instance.all_jobs()));
}

TEST_CASE("solvability pretest") {
  CHECK(verify_solvability(golden_problem(6)));
  CHECK_FALSE(verify_solvability(golden_problem(6, {}, JobSet::of(4, {0, 3}))));
  CHECK(verify_solvability(golden_problem(6, {}, JobSet::of(4, {3}))));
}

TEST_CASE("quickxplain finds a golden minimal conflict") {
  DiagnosisProblem problem = golden_problem(6);
  const auto conflict =
      quickxplain_conflict(problem, problem.instance.all_jobs());
  REQUIRE(conflict.has_value());
  const bool is_03 = conflict->jobs == JobSet::of(4, {0, 3});
  const bool is_23 = conflict->jobs == JobSet::of(4, {2, 3});
  CHECK((is_03 || is_23));
}

TEST_CASE("quickxplain returns none when everything fits") {
  DiagnosisProblem problem = golden_problem(6);
  CHECK_FALSE(
      quickxplain_conflict(problem, problem.instance.all_jobs().without(3)).has_value());
}

TEST_CASE("quickxplain against a background finds the forced singleton") {
  DiagnosisProblem problem = golden_problem(6, {}, JobSet::of(4, {3}));
  const auto conflict = quickxplain_conflict(problem, JobSet::of(4, {0, 1, 2}));
  REQUIRE(conflict.has_value());
  CHECK(conflict->jobs == JobSet::of(4, {0}));
}

TEST_CASE("conflict enumeration is exact on the golden instance") {
  const auto conflicts = enumerate_minimal_conflicts(golden_problem(6), 16);
  REQUIRE(conflicts.size() == 2);
  CHECK(same_family({conflicts[0].jobs, conflicts[1].jobs},
                    {JobSet::of(4, {0, 3}), JobSet::of(4, {2, 3})}));
}

TEST_CASE("no conflicts at the optimum deadline") {
  CHECK(enumerate_minimal_conflicts(golden_problem(9), 16).empty());
}

TEST_CASE("a zero deadline makes every job a singleton conflict") {
  const auto conflicts = enumerate_minimal_conflicts(golden_problem(0), 16);
  REQUIRE(conflicts.size() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(std::count_if(conflicts.begin(), conflicts.end(), [&](const Conflict& c) {
            return c.jobs == JobSet::of(4, {j});
          }) == 1);
  }
}

TEST_CASE("jmp finds one of the golden diagnoses") {
  const Diagnosis diagnosis = jmp_solve(golden_problem(6));
  const bool is_3 = diagnosis.removed == JobSet::of(4, {3});
  const bool is_02 = diagnosis.removed == JobSet::of(4, {0, 2});
  CHECK((is_3 || is_02));
  REQUIRE(diagnosis.witness.has_value());
  const JobShopInstance instance = golden_instance();
  CHECK(is_consistent_schedule(instance, instance.all_jobs().difference(diagnosis.removed),
                               *diagnosis.witness));
}

TEST_CASE("jmp removes nothing at the optimum deadline") {
  CHECK(jmp_solve(golden_problem(9)).removed.empty());
}

TEST_CASE("jmp with job 3 in the background removes jobs 0 and 2") {
  CHECK(jmp_solve(golden_problem(6, {}, JobSet::of(4, {3}))).removed ==
        JobSet::of(4, {0, 2}));
}

TEST_CASE("jmp throws when even full removal cannot help") {
  CHECK_THROWS_AS(jmp_solve(golden_problem(6, {}, JobSet::of(4, {0, 3}))),
                  NoSolutionError);
}

TEST_CASE("jmp_enumerate returns exactly the two golden diagnoses") {
  const auto diagnoses = jmp_enumerate(golden_problem(6), 5);
  REQUIRE(diagnoses.size() == 2);
  CHECK(same_family({diagnoses[0].removed, diagnoses[1].removed},
                    {JobSet::of(4, {3}), JobSet::of(4, {0, 2})}));

  const auto one = jmp_enumerate(golden_problem(6), 1);
  REQUIRE(one.size() == 1);
  const bool valid = one[0].removed == JobSet::of(4, {3}) ||
                     one[0].removed == JobSet::of(4, {0, 2});
  CHECK(valid);
}

TEST_CASE("jmp_enumerate at the optimum returns only the empty diagnosis") {
  const auto diagnoses = jmp_enumerate(golden_problem(9), 3);
  REQUIRE(diagnoses.size() == 1);
  CHECK(diagnoses[0].removed.empty());
}

TEST_CASE("jop uniform prefers the smallest diagnosis") {
  const Diagnosis diagnosis = jop_solve(golden_problem(6), CostMode::kUniform);
  CHECK(diagnosis.removed == JobSet::of(4, {3}));
}

TEST_CASE("jop with utilities prefers kept utility 7") {
  DiagnosisProblem problem = golden_problem(6);
  problem.instance = golden_instance_with_utilities();
  const Diagnosis diagnosis = jop_solve(problem, CostMode::kUtility);
  CHECK(diagnosis.removed == JobSet::of(4, {0, 2}));
  CHECK(diagnosis.kept_utility == 7);
}

TEST_CASE("zero-utility jobs are allowed and removed preferentially") {
  DiagnosisProblem problem = golden_problem(6);
  std::vector<JobSpec> jobs = problem.instance.jobs();
  jobs[0].utility = 0;
  jobs[1].utility = 3;
  jobs[2].utility = 0;
  jobs[3].utility = 4;
  problem.instance = JobShopInstance(std::move(jobs), 3);
  const Diagnosis diagnosis = jop_solve(problem, CostMode::kUtility);
  CHECK(diagnosis.removed == JobSet::of(4, {0, 2}));
  CHECK(diagnosis.kept_utility == 7);
}

TEST_CASE("utility ties break by cardinality, then lexicographically") {
  DiagnosisProblem problem = golden_problem(6);
  std::vector<JobSpec> jobs = problem.instance.jobs();
  jobs[0].utility = 0;
  jobs[1].utility = 1;
  jobs[2].utility = 0;
  jobs[3].utility = 0;
  problem.instance = JobShopInstance(std::move(jobs), 3);
  // Removing {3} and removing {0,2} both cost 0; the smaller set wins.
  const Diagnosis diagnosis = jop_solve(problem, CostMode::kUtility);
  CHECK(diagnosis.removed == JobSet::of(4, {3}));
  CHECK(diagnosis.kept_utility == 1);
}

TEST_CASE("jop depth limits") {
  CHECK(jop_solve(golden_problem(6), CostMode::kUniform, 1).removed ==
        JobSet::of(4, {3}));
  CHECK_THROWS_AS(jop_solve(golden_problem(6), CostMode::kUniform, 0),
                  NoSolutionWithinDepthError);
}

TEST_CASE("eminc picks the most frequent job, ties by lowest id") {
  CHECK(eminc_job({Conflict{JobSet::of(4, {0, 3})}, Conflict{JobSet::of(4, {2, 3})}}) == 3);
  CHECK(eminc_job({Conflict{JobSet::of(4, {1})}}) == 1);
  CHECK(eminc_job({Conflict{JobSet::of(4, {0, 1})}, Conflict{JobSet::of(4, {0, 2})},
                   Conflict{JobSet::of(4, {1, 2})}}) == 0);
  CHECK_THROWS_AS(eminc_job({}), PreconditionError);
}

TEST_CASE("budget exhaustion inside a check is a hard error") {
  // Needs an instance whose optimum sits strictly above the root relaxation,
  // so the decision between them cannot resolve without search.
  bool exercised = false;
  for (int index = 0; index < 20 && !exercised; ++index) {
    const JobShopInstance instance = corpus_instance(index);
    const Time optimum = brute_force_optimal_makespan(instance, instance.all_jobs());
    const Time root = lower_bound(instance, instance.all_jobs());
    if (root >= optimum) continue;

    DiagnosisProblem problem;
    problem.instance = instance;
    problem.kappa = optimum - 1;
    problem.budget = SearchBudget::nodes(0);
    DiagnosisEngine engine(problem);
    CHECK_THROWS_AS(engine.keep_consistent(instance.all_jobs()), BudgetExhaustedError);
    exercised = true;
  }
  CHECK(exercised);
}

TEST_CASE("jmp_enumerate surfaces budget exhaustion as an incomplete list") {
  DiagnosisProblem problem = golden_problem(6);
  DiagnosisEngine engine(problem);
  engine.set_deadline(std::chrono::steady_clock::now() - std::chrono::seconds(1));
  bool complete = true;
  const auto partial = engine.jmp_enumerate(5, &complete);
  CHECK_FALSE(complete);
  CHECK(partial.empty());
}

TEST_CASE("jmp_enumerate returns what it already knows under an expired deadline") {
  DiagnosisProblem problem = golden_problem(6);
  DiagnosisEngine engine(problem);
  (void)engine.jmp_solve();
  engine.set_deadline(std::chrono::steady_clock::now() - std::chrono::seconds(1));
  bool complete = true;
  const auto partial = engine.jmp_enumerate(5, &complete);
  CHECK_FALSE(complete);
  REQUIRE(partial.size() == 1);
  const bool valid = partial[0].removed == JobSet::of(4, {3}) ||
                     partial[0].removed == JobSet::of(4, {0, 2});
  CHECK(valid);
  CHECK_FALSE(partial[0].witness.has_value());
}

TEST_CASE("engine validates its inputs") {
  DiagnosisProblem problem = golden_problem(6);
  DiagnosisEngine engine(problem);
  CHECK_THROWS_AS(engine.keep_consistent(JobSet::of(3, {0})), PreconditionError);
  CHECK_THROWS_AS(engine.minimal_conflict(JobSet::of(3, {0})), PreconditionError);
  DiagnosisProblem with_background = golden_problem(6, {}, JobSet::of(4, {3}));
  DiagnosisEngine engine2(with_background);
  CHECK_THROWS_AS(engine2.minimal_conflict(JobSet::of(4, {3})), PreconditionError);
  CHECK_THROWS_AS(engine2.keep_consistent(JobSet::of(4, {0})), PreconditionError);
}

TEST_CASE("families match full enumeration on the corpus") {
  for (int index = 0; index < 10; ++index) {
    const JobShopInstance instance = corpus_instance(index);
    const SubsetOracle oracle(instance);
    const Time kappa = static_cast<Time>(
        std::floor(0.75 * static_cast<double>(oracle.full_optimum())));

    DiagnosisProblem problem;
    problem.instance = instance;
    problem.kappa = kappa;
    problem.background = JobSet(instance.job_count());
    problem.budget = SearchBudget::nodes(5'000'000);

    DiagnosisEngine engine(problem);
    if (!engine.verify_solvability()) continue;

    const auto expected =
        reference_families(instance, oracle, problem.threshold(), problem.background);

    bool complete = false;
    const auto conflicts = engine.enumerate_minimal_conflicts(1 << 12, &complete);
    CHECK(complete);
    std::vector<JobSet> conflict_sets;
    for (const auto& c : conflicts) conflict_sets.push_back(c.jobs);
    CHECK(same_family(conflict_sets, expected.conflicts));

    DiagnosisEngine engine2(problem);
    bool all_found = false;
    const auto diagnoses = engine2.jmp_enumerate(1 << 12, &all_found);
    CHECK(all_found);
    std::vector<JobSet> diagnosis_sets;
    for (const auto& d : diagnoses) diagnosis_sets.push_back(d.removed);
    CHECK(same_family(diagnosis_sets, expected.diagnoses));

    // Hitting-set duality: every minimal diagnosis hits every minimal conflict.
    for (const JobSet& d : diagnosis_sets) {
      for (const JobSet& c : conflict_sets) CHECK(d.intersects(c));
    }
  }
}

TEST_CASE("jmp diagnoses are subset-minimal and exclude the background") {
  for (int index = 0; index < 10; ++index) {
    const JobShopInstance instance = corpus_instance(index);
    const SubsetOracle oracle(instance);
    const Time kappa = static_cast<Time>(
        std::floor(0.8 * static_cast<double>(oracle.full_optimum())));

    DiagnosisProblem problem;
    problem.instance = instance;
    problem.kappa = kappa;
    problem.background = JobSet::of(instance.job_count(), {0});
    problem.budget = SearchBudget::nodes(5'000'000);

    DiagnosisEngine engine(problem);
    if (!engine.verify_solvability()) continue;
    const Diagnosis diagnosis = engine.jmp_solve();

    CHECK_FALSE(diagnosis.removed.intersects(problem.background));
    const JobSet kept = instance.all_jobs().difference(diagnosis.removed);
    CHECK(oracle.feasible(kept, problem.threshold()));
    for (int j : diagnosis.removed.ids()) {
      CHECK_FALSE(oracle.feasible(kept.with(j), problem.threshold()));
    }
  }
}

TEST_CASE("epsilon-tolerant diagnoses stay within kappa plus epsilon") {
  for (int index = 0; index < 10; ++index) {
    const JobShopInstance instance = corpus_instance(index);
    const SubsetOracle oracle(instance);
    const Time kappa = static_cast<Time>(
        std::floor(0.8 * static_cast<double>(oracle.full_optimum())));

    for (const Epsilon& epsilon : {Epsilon::absolute(1), Epsilon::ratio(0.05)}) {
      DiagnosisProblem problem;
      problem.instance = instance;
      problem.kappa = kappa;
      problem.epsilon = epsilon;
      problem.budget = SearchBudget::nodes(5'000'000);
      const Diagnosis diagnosis = jmp_solve(problem);
      const JobSet kept = instance.all_jobs().difference(diagnosis.removed);
      CHECK(oracle.optimum(kept) <= kappa + epsilon.effective(kappa));
    }
  }
}

TEST_CASE("inverse quickxplain respects the MSMP check bound") {
  for (int index = 0; index < 10; ++index) {
    const JobShopInstance instance = corpus_instance(index);
    const Time kappa = static_cast<Time>(std::floor(
        0.7 * static_cast<double>(
                  optimize_makespan(instance, instance.all_jobs()).makespan)));

    DiagnosisProblem problem;
    problem.instance = instance;
    problem.kappa = kappa;
    problem.budget = SearchBudget::nodes(5'000'000);
    DiagnosisEngine engine(problem);
    (void)engine.jmp_solve();

    const auto n = static_cast<double>(instance.job_count());
    const std::int64_t bound =
        static_cast<std::int64_t>(2.0 * n * (std::ceil(std::log2(n)) + 1.0) + 2.0);
    CHECK(engine.stats().msmp_checks <= bound);
  }
}

TEST_SUITE_END();
