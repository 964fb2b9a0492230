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

#include "jobset/io.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "jobset/errors.hpp"

namespace jobset {

namespace {

using nlohmann::json;

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<long long> parse_int_tokens(const std::string& line, int line_number) {
  std::vector<long long> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      tokens.push_back(value);
    } catch (const std::exception&) {
      throw ParseError("token '" + token + "' is not an integer", line_number);
    }
  }
  return tokens;
}

void throw_on_violations(const JobShopInstance& instance) {
  const auto violations = validate_instance(instance);
  if (!violations.empty()) throw ParseError("invalid instance: " + violations.front());
}

}  // namespace

JobShopInstance parse_taillard(std::string_view text) {
  std::istringstream input{std::string(text)};
  std::string line;
  int line_number = 0;

  int job_count = -1;
  int machine_count = -1;
  std::vector<JobSpec> jobs;

  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_comment_or_blank(line)) continue;
    const auto tokens = parse_int_tokens(line, line_number);
    if (tokens.empty()) continue;

    if (job_count < 0) {
      if (tokens.size() != 2) {
        throw ParseError("header must be exactly 'jobs machines', got " +
                             std::to_string(tokens.size()) + " tokens",
                         line_number);
      }
      job_count = static_cast<int>(tokens[0]);
      machine_count = static_cast<int>(tokens[1]);
      if (job_count < 1 || machine_count < 1) {
        throw ParseError("job and machine counts must be positive", line_number);
      }
      continue;
    }

    if (static_cast<int>(jobs.size()) >= job_count) {
      throw ParseError("unexpected data after " + std::to_string(job_count) + " job lines",
                       line_number);
    }
    if (tokens.size() != static_cast<std::size_t>(2 * machine_count)) {
      throw ParseError("expected " + std::to_string(2 * machine_count) +
                           " tokens (machine/duration pairs), got " +
                           std::to_string(tokens.size()),
                       line_number);
    }
    JobSpec job;
    job.id = static_cast<int>(jobs.size());
    for (int k = 0; k < machine_count; ++k) {
      const long long machine = tokens[static_cast<std::size_t>(2 * k)];
      const long long duration = tokens[static_cast<std::size_t>(2 * k + 1)];
      if (machine < 0 || machine >= machine_count) {
        throw ParseError("machine id " + std::to_string(machine) + " outside [0, " +
                             std::to_string(machine_count) + ")",
                         line_number);
      }
      if (duration < 1) {
        throw ParseError("duration must be >= 1, got " + std::to_string(duration),
                         line_number);
      }
      job.operations.push_back(OperationSpec{static_cast<int>(machine), duration});
    }
    jobs.push_back(std::move(job));
  }

  if (job_count < 0) throw ParseError("missing 'jobs machines' header");
  if (static_cast<int>(jobs.size()) != job_count) {
    throw ParseError("expected " + std::to_string(job_count) + " job lines, got " +
                     std::to_string(jobs.size()));
  }
  return JobShopInstance(std::move(jobs), machine_count);
}

std::string serialize_taillard(const JobShopInstance& instance) {
  std::ostringstream out;
  out << instance.job_count() << ' ' << instance.machine_count() << '\n';
  for (const JobSpec& job : instance.jobs()) {
    bool first = true;
    for (const OperationSpec& op : job.operations) {
      if (!first) out << ' ';
      out << op.machine << ' ' << op.duration;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

InstanceDocument parse_instance_document(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    InstanceDocument out;
    out.name = doc.value("name", std::string{});
    const int machines = doc.at("machines").get<int>();
    std::vector<JobSpec> jobs;
    for (const auto& job_node : doc.at("jobs")) {
      JobSpec job;
      job.id = static_cast<int>(jobs.size());
      job.arrival = job_node.value("arrival", static_cast<Time>(0));
      job.utility = job_node.value("utility", static_cast<std::int64_t>(1));
      for (const auto& op_node : job_node.at("operations")) {
        if (!op_node.is_array() || op_node.size() != 2) {
          throw ParseError("operations must be [machine, duration] pairs");
        }
        job.operations.push_back(
            OperationSpec{op_node.at(0).get<int>(), op_node.at(1).get<Time>()});
      }
      jobs.push_back(std::move(job));
    }
    out.instance = JobShopInstance(std::move(jobs), machines);
    throw_on_violations(out.instance);

    if (doc.contains("background")) {
      JobSet background(out.instance.job_count());
      for (const auto& id_node : doc.at("background")) {
        const int id = id_node.get<int>();
        if (id < 0 || id >= out.instance.job_count()) {
          throw ParseError("background job id " + std::to_string(id) + " out of range");
        }
        background.insert(id);
      }
      out.background = std::move(background);
    }
    if (doc.contains("optimum")) out.optimum = doc.at("optimum").get<Time>();
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid instance document: ") + e.what());
  }
}

std::string serialize_instance_document(const InstanceDocument& document) {
  json doc;
  if (!document.name.empty()) doc["name"] = document.name;
  doc["machines"] = document.instance.machine_count();
  doc["jobs"] = json::array();
  for (const JobSpec& job : document.instance.jobs()) {
    json job_node;
    json ops = json::array();
    for (const OperationSpec& op : job.operations) {
      ops.push_back(json::array({op.machine, op.duration}));
    }
    job_node["operations"] = std::move(ops);
    if (job.arrival != 0) job_node["arrival"] = job.arrival;
    job_node["utility"] = job.utility;
    doc["jobs"].push_back(std::move(job_node));
  }
  if (document.background && !document.background->empty()) {
    doc["background"] = document.background->ids();
  }
  if (document.optimum) doc["optimum"] = *document.optimum;
  return doc.dump(2);
}

InstanceDocument load_instance_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open file: " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();

  const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  if (is_json) return parse_instance_document(buffer.str());

  InstanceDocument out;
  const auto slash = path.find_last_of('/');
  out.name = slash == std::string::npos ? path : path.substr(slash + 1);
  out.instance = parse_taillard(buffer.str());
  return out;
}

void save_instance_file(const std::string& path, const InstanceDocument& document) {
  std::ofstream file(path);
  if (!file) throw Error("cannot write file: " + path);
  const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  file << (is_json ? serialize_instance_document(document)
                   : serialize_taillard(document.instance));
  if (is_json) file << '\n';
}

std::string serialize_schedule(const Schedule& schedule) {
  json arr = json::array();
  for (const auto& [key, start] : schedule.starts()) {
    arr.push_back(json{{"job", key.job}, {"op", key.op}, {"start", start}});
  }
  return arr.dump();
}

Schedule parse_schedule(const std::string& json_text) {
  json arr;
  try {
    arr = json::parse(json_text);
    Schedule schedule;
    for (const auto& node : arr) {
      schedule.set_start(node.at("job").get<int>(), node.at("op").get<int>(),
                         node.at("start").get<Time>());
    }
    return schedule;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid schedule JSON: ") + e.what());
  }
}

JobShopInstance generate_instance(std::uint64_t seed, int jobs, int machines,
                                  Time dur_min, Time dur_max) {
  if (jobs < 1 || machines < 1) throw PreconditionError("jobs and machines must be >= 1");
  if (dur_min < 1 || dur_max < dur_min) {
    throw PreconditionError("duration range must satisfy 1 <= min <= max");
  }
  std::mt19937_64 rng(seed);
  // Hand-rolled bounded draw: std::uniform_int_distribution is not portable
  // across standard library implementations.
  auto draw = [&rng](std::uint64_t bound) { return rng() % bound; };

  std::vector<JobSpec> specs;
  specs.reserve(static_cast<std::size_t>(jobs));
  for (int j = 0; j < jobs; ++j) {
    std::vector<int> order(static_cast<std::size_t>(machines));
    for (int m = 0; m < machines; ++m) order[static_cast<std::size_t>(m)] = m;
    for (int m = machines - 1; m > 0; --m) {
      const auto k = static_cast<std::size_t>(draw(static_cast<std::uint64_t>(m + 1)));
      std::swap(order[static_cast<std::size_t>(m)], order[k]);
    }
    JobSpec job;
    job.id = j;
    for (int machine : order) {
      const Time duration =
          dur_min + static_cast<Time>(draw(static_cast<std::uint64_t>(dur_max - dur_min + 1)));
      job.operations.push_back(OperationSpec{machine, duration});
    }
    specs.push_back(std::move(job));
  }
  return JobShopInstance(std::move(specs), machines);
}

}  // namespace jobset
