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

#include "jobset/external_checker.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "jobset/errors.hpp"
#include "jobset/io.hpp"
#include "jobset/schedule.hpp"

namespace jobset {

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

std::string run_command(const std::string& command_line) {
  FILE* pipe = popen(command_line.c_str(), "r");
  if (!pipe) throw Error("failed to spawn external checker: " + command_line);
  std::string output;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    output.append(buffer, n);
  }
  const int status = pclose(pipe);
  (void)status;  // the verdict line is authoritative, not the exit code
  return output;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    char name[] = "/tmp/jobset-check-XXXXXX";
    const int fd = mkstemp(name);
    if (fd < 0) throw Error("cannot create temporary problem file");
    path = name;
    std::ofstream out(path);
    out << contents;
    out.close();
    close(fd);
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

CheckOutcome external_decide_makespan_le(const ExternalCheckerConfig& config,
                                         const JobShopInstance& instance,
                                         const JobSet& subset, Time tau) {
  // Restrict the instance to the subset; dense ids are required by the
  // document format, so remember the mapping back.
  const std::vector<int> original_ids = subset.ids();
  std::vector<JobSpec> jobs;
  jobs.reserve(original_ids.size());
  for (std::size_t i = 0; i < original_ids.size(); ++i) {
    JobSpec job = instance.job(original_ids[i]);
    job.id = static_cast<int>(i);
    jobs.push_back(std::move(job));
  }
  InstanceDocument document;
  document.name = "subset-query";
  document.instance = JobShopInstance(std::move(jobs), instance.machine_count());

  const TempFile problem_file(serialize_instance_document(document));
  std::ostringstream command_line;
  command_line << config.command << ' ' << shell_quote(problem_file.path) << ' ' << tau << ' '
               << config.time_limit.count();

  const std::string output = run_command(command_line.str());
  std::istringstream lines(output);
  std::string verdict;
  if (!std::getline(lines, verdict)) {
    throw Error("external checker produced no output");
  }
  while (!verdict.empty() && (verdict.back() == '\r' || verdict.back() == ' ')) {
    verdict.pop_back();
  }

  SearchStats stats;
  if (verdict == "INCONSISTENT") return CheckOutcome::inconsistent(tau + 1, stats);
  if (verdict == "UNKNOWN") return CheckOutcome::exhausted(std::nullopt, 0, stats);
  if (verdict != "CONSISTENT") {
    throw Error("external checker replied with unknown verdict: '" + verdict + "'");
  }

  std::string witness_line;
  if (std::getline(lines, witness_line) && !witness_line.empty()) {
    const Schedule remapped = parse_schedule(witness_line);
    Schedule witness;
    for (const auto& [key, start] : remapped.starts()) {
      if (key.job < 0 || key.job >= static_cast<int>(original_ids.size())) {
        throw Error("external witness references job " + std::to_string(key.job) +
                    " outside the queried subset");
      }
      witness.set_start(original_ids[static_cast<std::size_t>(key.job)], key.op, start);
    }
    if (!is_consistent_schedule(instance, subset, witness)) {
      throw Error("external witness schedule is not consistent");
    }
    const Time value = makespan(instance, subset, witness);
    if (value > tau) {
      throw Error("external witness exceeds the queried threshold");
    }
    return CheckOutcome::consistent(std::move(witness), value, stats);
  }
  // Verdict without witness: trusted; only the threshold is known as a bound.
  return CheckOutcome::consistent(Schedule{}, tau, stats);
}

}  // namespace jobset
