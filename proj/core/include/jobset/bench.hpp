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
#include <string>
#include <vector>

#include "jobset/diagnosis.hpp"
#include "jobset/io.hpp"

namespace jobset {

// One (instance, deadline level) measurement. kappa = floor(r * optimum).
// diag_size is present exactly when the run solved; a run that proved the
// level unsolvable (background too heavy) is reported distinctly.
struct BenchmarkRecord {
  enum class Status { kSolved, kTimeout, kNoSolution };

  std::string instance_name;
  int jobs = 0;
  int machines = 0;
  double r = 1.0;
  Time kappa = 0;
  std::optional<int> diag_size;
  std::optional<std::vector<int>> removed;  // the diagnosis behind diag_size
  std::chrono::milliseconds wall{0};
  Status status = Status::kSolved;
};

struct BenchmarkOptions {
  std::vector<double> r_levels{0.95, 0.9, 0.85, 0.8, 0.75};
  bool use_jop = false;              // default: one minimal diagnosis per record
  CostMode mode = CostMode::kUniform;
  std::chrono::seconds timeout{60};  // wall clock per record
  SearchBudget per_check;            // budget for each consistency check
  Epsilon epsilon;
};

// Runs solver x (document, r) records in canonical order (documents in input
// order, r levels as given). A missing optimum is computed once per document
// by exact optimization and must be proven within the record timeout.
// Completed records stream through `on_record` as they finish; failures are
// per-record timeouts, never batch aborts.
std::vector<BenchmarkRecord> run_benchmark(
    const std::vector<InstanceDocument>& documents, const BenchmarkOptions& options,
    const std::function<void(const BenchmarkRecord&)>& on_record = {});

// Fixed-width table in the shape "r | diag size | time", grouped by deadline
// level, "---" for timeouts, "n/s" for proven-unsolvable records. Time is in
// whole seconds.
std::string format_table(const std::vector<BenchmarkRecord>& records);

// One JSON object per record, newline-terminated.
std::string to_jsonl(const BenchmarkRecord& record);
BenchmarkRecord from_jsonl(const std::string& line);

}  // namespace jobset
