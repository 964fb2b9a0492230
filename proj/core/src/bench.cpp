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

#include "jobset/bench.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "jobset/errors.hpp"

namespace jobset {

namespace {

using nlohmann::json;

std::string format_r(double r) {
  std::ostringstream out;
  out << r;  // 0.95, 0.9, ... match their literal spellings
  return out.str();
}

Time proven_optimum(const InstanceDocument& document, std::chrono::seconds timeout) {
  if (document.optimum) return *document.optimum;
  SearchBudget budget;
  budget.max_time = std::chrono::duration_cast<std::chrono::milliseconds>(timeout);
  const OptimizeResult result =
      optimize_makespan(document.instance, document.instance.all_jobs(), budget);
  if (!result.proven_optimal) {
    throw BudgetExhaustedError("could not prove the optimum of '" + document.name +
                               "' within the record timeout; supply it as metadata");
  }
  return result.makespan;
}

}  // namespace

std::vector<BenchmarkRecord> run_benchmark(
    const std::vector<InstanceDocument>& documents, const BenchmarkOptions& options,
    const std::function<void(const BenchmarkRecord&)>& on_record) {
  std::vector<BenchmarkRecord> records;
  for (const InstanceDocument& document : documents) {
    const Time optimum = proven_optimum(document, options.timeout);
    for (double r : options.r_levels) {
      BenchmarkRecord record;
      record.instance_name = document.name;
      record.jobs = document.instance.job_count();
      record.machines = document.instance.machine_count();
      record.r = r;
      record.kappa = static_cast<Time>(std::floor(r * static_cast<double>(optimum)));

      DiagnosisProblem problem;
      problem.instance = document.instance;
      problem.kappa = record.kappa;
      problem.epsilon = options.epsilon;
      if (document.background) problem.background = *document.background;
      problem.budget = options.per_check;
      if (!problem.budget.max_time) {
        // A single consistency check never outlives its record's budget.
        problem.budget.max_time =
            std::chrono::duration_cast<std::chrono::milliseconds>(options.timeout);
      }

      const auto started = std::chrono::steady_clock::now();
      DiagnosisEngine engine(problem);
      engine.set_deadline(started + options.timeout);
      try {
        if (!engine.verify_solvability()) {
          record.status = BenchmarkRecord::Status::kNoSolution;
        } else {
          const Diagnosis diagnosis =
              options.use_jop ? engine.jop_solve(options.mode) : engine.jmp_solve();
          record.status = BenchmarkRecord::Status::kSolved;
          record.diag_size = diagnosis.removed.count();
          record.removed = diagnosis.removed.ids();
        }
      } catch (const BudgetExhaustedError&) {
        record.status = BenchmarkRecord::Status::kTimeout;
      }
      record.wall = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - started);

      if (on_record) on_record(record);
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::string format_table(const std::vector<BenchmarkRecord>& records) {
  std::ostringstream out;
  out << "r | diag size | time\n";

  // Group by deadline level, tightest last, instances in input order.
  std::map<double, std::vector<const BenchmarkRecord*>, std::greater<double>> by_r;
  for (const BenchmarkRecord& record : records) by_r[record.r].push_back(&record);

  bool first_group = true;
  for (const auto& [r, group] : by_r) {
    if (!first_group) out << "--\n";
    first_group = false;
    for (const BenchmarkRecord* record : group) {
      out << format_r(r) << " | ";
      switch (record->status) {
        case BenchmarkRecord::Status::kSolved:
          out << *record->diag_size << " | "
              << std::llround(static_cast<double>(record->wall.count()) / 1000.0);
          break;
        case BenchmarkRecord::Status::kTimeout:
          out << "--- | ---";
          break;
        case BenchmarkRecord::Status::kNoSolution:
          out << "n/s | "
              << std::llround(static_cast<double>(record->wall.count()) / 1000.0);
          break;
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string to_jsonl(const BenchmarkRecord& record) {
  json node{{"instance", record.instance_name},
            {"jobs", record.jobs},
            {"machines", record.machines},
            {"r", record.r},
            {"kappa", record.kappa},
            {"wall_ms", record.wall.count()}};
  switch (record.status) {
    case BenchmarkRecord::Status::kSolved:
      node["status"] = "solved";
      node["diag_size"] = *record.diag_size;
      if (record.removed) node["removed"] = *record.removed;
      break;
    case BenchmarkRecord::Status::kTimeout:
      node["status"] = "timeout";
      break;
    case BenchmarkRecord::Status::kNoSolution:
      node["status"] = "no-solution";
      break;
  }
  return node.dump() + "\n";
}

BenchmarkRecord from_jsonl(const std::string& line) {
  try {
    const json node = json::parse(line);
    BenchmarkRecord record;
    record.instance_name = node.at("instance").get<std::string>();
    record.jobs = node.at("jobs").get<int>();
    record.machines = node.at("machines").get<int>();
    record.r = node.at("r").get<double>();
    record.kappa = node.at("kappa").get<Time>();
    record.wall = std::chrono::milliseconds(node.at("wall_ms").get<std::int64_t>());
    const std::string status = node.at("status").get<std::string>();
    if (status == "solved") {
      record.status = BenchmarkRecord::Status::kSolved;
      record.diag_size = node.at("diag_size").get<int>();
      if (node.contains("removed")) record.removed = node.at("removed").get<std::vector<int>>();
    } else if (status == "timeout") {
      record.status = BenchmarkRecord::Status::kTimeout;
    } else if (status == "no-solution") {
      record.status = BenchmarkRecord::Status::kNoSolution;
    } else {
      throw ParseError("unknown record status: " + status);
    }
    return record;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid benchmark record: ") + e.what());
  }
}

}  // namespace jobset
