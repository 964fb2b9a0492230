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
//
// Command line front end: deadline checks, conflict extraction, JMP/JOP
// solving, interactive oracle sessions, the benchmark harness and a seeded
// instance generator.
//
// Exit codes: 0 success, 1 no-solution/unsolvable/inconsistent, 2 parse or
// usage error, 3 budget exhausted.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jobset/bench.hpp"
#include "jobset/diagnosis.hpp"
#include "jobset/errors.hpp"
#include "jobset/io.hpp"
#include "jobset/solver.hpp"
#include "jobset/strategy.hpp"

namespace {

using namespace jobset;

constexpr int kExitSuccess = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct ProblemArgs {
  std::string file;
  Time kappa = 0;
  std::optional<Time> epsilon_abs;
  std::optional<double> epsilon_ratio;
  std::int64_t max_nodes = 50'000'000;
  std::optional<double> time_limit_s;
};

void add_problem_options(CLI::App* cmd, ProblemArgs* args, bool kappa_required = true) {
  cmd->add_option("file", args->file, "instance file (.json document or Taillard text)")
      ->required();
  auto* kappa = cmd->add_option("--kappa", args->kappa, "deadline (makespan budget)");
  if (kappa_required) kappa->required();
  auto* eps = cmd->add_option("--epsilon", args->epsilon_abs,
                              "absolute consistency tolerance (time units)");
  cmd->add_option("--epsilon-ratio", args->epsilon_ratio,
                  "relative tolerance; effective epsilon = floor(kappa * ratio)")
      ->excludes(eps);
  cmd->add_option("--max-nodes", args->max_nodes, "node budget per consistency check");
  cmd->add_option("--time-limit", args->time_limit_s,
                  "time budget per consistency check, seconds");
}

DiagnosisProblem build_problem(const ProblemArgs& args, const InstanceDocument& document) {
  DiagnosisProblem problem;
  problem.instance = document.instance;
  problem.kappa = args.kappa;
  if (args.epsilon_ratio) {
    problem.epsilon = Epsilon::ratio(*args.epsilon_ratio);
  } else if (args.epsilon_abs) {
    problem.epsilon = Epsilon::absolute(*args.epsilon_abs);
  }
  if (document.background) problem.background = *document.background;
  problem.budget.max_nodes = args.max_nodes;
  if (args.time_limit_s) {
    problem.budget.max_time =
        std::chrono::milliseconds(static_cast<std::int64_t>(*args.time_limit_s * 1000.0));
  }
  return problem;
}

std::string id_list(const JobSet& jobs) {
  std::string out;
  for (int id : jobs.ids()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(id);
  }
  return out;
}

int run_check(const ProblemArgs& args, const std::vector<int>& subset_ids,
              bool print_witness) {
  const InstanceDocument document = load_instance_file(args.file);
  const DiagnosisProblem problem = build_problem(args, document);
  const JobSet subset = subset_ids.empty()
                            ? document.instance.all_jobs()
                            : JobSet::from_ids(document.instance.job_count(), subset_ids);
  const CheckOutcome outcome =
      decide_makespan_le(document.instance, subset, problem.threshold(), problem.budget);
  switch (outcome.verdict()) {
    case CheckOutcome::Verdict::kConsistent:
      std::cout << "CONSISTENT\n";
      if (print_witness) std::cout << serialize_schedule(outcome.witness()) << "\n";
      return kExitSuccess;
    case CheckOutcome::Verdict::kInconsistent:
      std::cout << "INCONSISTENT\n";
      return kExitNoSolution;
    case CheckOutcome::Verdict::kExhausted:
      std::cout << "UNKNOWN\n";
      return kExitBudget;
  }
  return kExitUsage;
}

int run_conflict(const ProblemArgs& args) {
  const InstanceDocument document = load_instance_file(args.file);
  const DiagnosisProblem problem = build_problem(args, document);
  DiagnosisEngine engine(problem);
  const auto conflict = engine.minimal_conflict(engine.removable());
  if (!conflict) {
    std::cout << "no conflict\n";
    return kExitSuccess;
  }
  if (conflict->jobs.empty()) {
    std::cout << "UNSOLVABLE: the background jobs alone exceed the deadline\n";
    return kExitNoSolution;
  }
  std::cout << "CONFLICT: " << id_list(conflict->jobs) << "\n";
  return kExitSuccess;
}

void print_diagnosis(const Diagnosis& diagnosis) {
  std::cout << "REMOVED: " << id_list(diagnosis.removed) << "\n";
  std::cout << "KEPT-UTILITY: " << diagnosis.kept_utility << "\n";
}

int run_jmp(const ProblemArgs& args, int enumerate) {
  const InstanceDocument document = load_instance_file(args.file);
  const DiagnosisProblem problem = build_problem(args, document);
  DiagnosisEngine engine(problem);
  if (enumerate <= 1) {
    print_diagnosis(engine.jmp_solve());
    return kExitSuccess;
  }
  bool complete = false;
  const auto diagnoses = engine.jmp_enumerate(enumerate, &complete);
  if (diagnoses.empty()) throw NoSolutionError("no diagnosis exists");
  for (const Diagnosis& diagnosis : diagnoses) {
    std::cout << "REMOVED: " << id_list(diagnosis.removed) << "\n";
  }
  std::cout << (complete ? "(complete)" : "(more may exist)") << "\n";
  return kExitSuccess;
}

int run_jop(const ProblemArgs& args, bool use_utilities, std::optional<int> depth_limit) {
  const InstanceDocument document = load_instance_file(args.file);
  const DiagnosisProblem problem = build_problem(args, document);
  DiagnosisEngine engine(problem);
  const CostMode mode = use_utilities ? CostMode::kUtility : CostMode::kUniform;
  print_diagnosis(engine.jop_solve(mode, depth_limit));
  return kExitSuccess;
}

int run_oracle(const ProblemArgs& args, const std::string& answers) {
  const InstanceDocument document = load_instance_file(args.file);
  const DiagnosisProblem problem = build_problem(args, document);
  OracleSession session(problem);
  std::size_t consumed = 0;
  while (const auto query = session.next_query()) {
    std::cout << "QUERY keep job " << *query << "? [y/n] " << std::flush;
    char answer = 0;
    if (!answers.empty()) {
      if (consumed >= answers.size()) {
        std::cerr << "error: --answers exhausted with queries remaining\n";
        return kExitUsage;
      }
      answer = answers[consumed++];
      std::cout << answer << "\n";
    } else {
      std::string line;
      if (!std::getline(std::cin, line) || line.empty()) {
        std::cerr << "error: no answer\n";
        return kExitUsage;
      }
      answer = line[0];
    }
    if (answer != 'y' && answer != 'n') {
      std::cerr << "error: answers must be 'y' or 'n'\n";
      return kExitUsage;
    }
    session.apply_answer(*query, answer == 'y');
  }
  const Diagnosis diagnosis = session.finalize();
  std::cout << "REMOVED: " << id_list(diagnosis.removed) << "\n";
  return kExitSuccess;
}

int run_bench(const std::vector<std::string>& files, const std::vector<double>& r_levels,
              double timeout_s, const std::string& mode, const std::string& out_path,
              std::int64_t max_nodes) {
  std::vector<InstanceDocument> documents;
  for (const std::string& file : files) documents.push_back(load_instance_file(file));

  BenchmarkOptions options;
  if (!r_levels.empty()) options.r_levels = r_levels;
  options.timeout = std::chrono::seconds(static_cast<std::int64_t>(timeout_s));
  options.use_jop = mode == "jop";
  options.per_check = SearchBudget::nodes(max_nodes);

  std::ofstream out_file;
  std::ostream* stream = &std::cout;
  if (!out_path.empty()) {
    out_file.open(out_path);
    if (!out_file) throw Error("cannot write " + out_path);
    stream = &out_file;
  }

  const auto records =
      run_benchmark(documents, options, [stream](const BenchmarkRecord& record) {
        *stream << to_jsonl(record) << std::flush;
      });
  std::cout << format_table(records);
  return kExitSuccess;
}

int run_gen(std::uint64_t seed, int jobs, int machines, Time dur_min, Time dur_max) {
  std::cout << serialize_taillard(generate_instance(seed, jobs, machines, dur_min, dur_max));
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"job shop deadline diagnosis: which jobs must go so the rest fits"};
  app.require_subcommand(1);

  ProblemArgs check_args;
  std::vector<int> check_subset;
  bool check_no_witness = false;
  auto* check = app.add_subcommand("check", "decide whether a job subset fits the deadline");
  add_problem_options(check, &check_args);
  check->add_option("--subset", check_subset, "job ids to keep (default: all)")
      ->delimiter(',');
  check->add_flag("--no-witness", check_no_witness, "suppress the witness schedule line");

  ProblemArgs conflict_args;
  auto* conflict = app.add_subcommand("conflict", "extract one minimal conflict");
  add_problem_options(conflict, &conflict_args);

  ProblemArgs jmp_args;
  int jmp_enumerate = 1;
  auto* jmp = app.add_subcommand("jmp", "find a subset-minimal set of jobs to drop");
  add_problem_options(jmp, &jmp_args);
  jmp->add_option("--enumerate", jmp_enumerate, "list up to N distinct minimal solutions");

  ProblemArgs jop_args;
  bool jop_uniform = false;
  bool jop_utilities = false;
  std::optional<int> jop_depth;
  auto* jop = app.add_subcommand("jop", "find the best set of jobs to drop");
  add_problem_options(jop, &jop_args);
  auto* uniform_flag =
      jop->add_flag("--uniform", jop_uniform, "minimize the number of dropped jobs");
  jop->add_flag("--utilities", jop_utilities, "maximize kept utility (default)")
      ->excludes(uniform_flag);
  jop->add_option("--depth-limit", jop_depth, "close search nodes deeper than this");

  ProblemArgs oracle_args;
  std::string oracle_answers;
  auto* oracle = app.add_subcommand("oracle", "interactive keep/drop question session");
  add_problem_options(oracle, &oracle_args);
  oracle->add_option("--answers", oracle_answers,
                     "pre-recorded y/n string for scripted replay");

  std::vector<std::string> bench_files;
  std::vector<double> bench_r;
  double bench_timeout = 60.0;
  std::string bench_mode = "jmp";
  std::string bench_out;
  std::int64_t bench_nodes = 50'000'000;
  auto* bench = app.add_subcommand("bench", "run the deadline-scaling benchmark harness");
  bench->add_option("files", bench_files, "instance files")->required();
  bench->add_option("--r", bench_r, "deadline ratios, e.g. 0.95,0.9,0.85")->delimiter(',');
  bench->add_option("--timeout", bench_timeout, "seconds per record");
  bench->add_option("--mode", bench_mode, "jmp or jop")
      ->check(CLI::IsMember({"jmp", "jop"}));
  bench->add_option("--out", bench_out, "write JSONL records to this file");
  bench->add_option("--max-nodes", bench_nodes, "node budget per consistency check");

  std::uint64_t gen_seed = 1;
  int gen_jobs = 8;
  int gen_machines = 4;
  Time gen_dur_min = 1;
  Time gen_dur_max = 99;
  auto* gen = app.add_subcommand("gen", "emit a seeded random instance in Taillard format");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--jobs", gen_jobs, "job count")->required();
  gen->add_option("--machines", gen_machines, "machine count")->required();
  gen->add_option("--dur-min", gen_dur_min, "minimum operation duration");
  gen->add_option("--dur-max", gen_dur_max, "maximum operation duration");

  try {
    app.parse(argc, argv);
    if (check->parsed()) return run_check(check_args, check_subset, !check_no_witness);
    if (conflict->parsed()) return run_conflict(conflict_args);
    if (jmp->parsed()) return run_jmp(jmp_args, jmp_enumerate);
    if (jop->parsed()) return run_jop(jop_args, jop_utilities || !jop_uniform, jop_depth);
    if (oracle->parsed()) return run_oracle(oracle_args, oracle_answers);
    if (bench->parsed()) {
      return run_bench(bench_files, bench_r, bench_timeout, bench_mode, bench_out,
                       bench_nodes);
    }
    if (gen->parsed()) return run_gen(gen_seed, gen_jobs, gen_machines, gen_dur_min,
                                      gen_dur_max);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoSolutionError& e) {
    std::cerr << "no solution: " << e.what() << "\n";
    return kExitNoSolution;
  } catch (const UnsolvableError& e) {
    std::cerr << "unsolvable: " << e.what() << "\n";
    return kExitNoSolution;
  } catch (const BudgetExhaustedError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
