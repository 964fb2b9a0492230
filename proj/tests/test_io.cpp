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

#include <cstdio>
#include <fstream>

#include "jobset/errors.hpp"
#include "jobset/io.hpp"
#include "support/fixtures.hpp"

using namespace jobset;
using namespace jobset::testing;

TEST_SUITE_BEGIN("io");

TEST_CASE("parse_taillard reads the documented two-job layout") {
  const JobShopInstance instance = parse_taillard("2 2\n0 2 1 3\n1 2 0 1\n");
  REQUIRE(instance.job_count() == 2);
  CHECK(instance.machine_count() == 2);
  CHECK(instance.job(0).operations[0].machine == 0);
  CHECK(instance.job(0).operations[0].duration == 2);
  CHECK(instance.job(0).operations[1].machine == 1);
  CHECK(instance.job(0).operations[1].duration == 3);
  CHECK(instance.job(1).operations[0].machine == 1);
  CHECK(instance.job(1).operations[1].duration == 1);
  CHECK(instance.job(0).arrival == 0);
  CHECK(instance.job(0).utility == 1);
}

TEST_CASE("comments and blank lines are skipped") {
  const JobShopInstance instance =
      parse_taillard("# generated fixture\n\n2 2\n0 2 1 3\n\n1 2 0 1\n");
  CHECK(instance.job_count() == 2);
}

TEST_CASE("carriage returns are tolerated") {
  const JobShopInstance instance = parse_taillard("2 2\r\n0 2 1 3\r\n1 2 0 1\r\n");
  CHECK(instance.job_count() == 2);
  CHECK(instance.job(1).operations[1].duration == 1);
}

TEST_CASE("arity mismatches name the offending line") {
  try {
    parse_taillard("2 2\n0 2 1 3 0 5\n1 2 0 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("bad tokens and ranges are rejected with line numbers") {
  CHECK_THROWS_AS(parse_taillard("2 2\n0 x 1 3\n1 2 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_taillard("2 2\n0 2 5 3\n1 2 0 1\n"), ParseError);  // machine 5
  CHECK_THROWS_AS(parse_taillard("2 2\n0 0 1 3\n1 2 0 1\n"), ParseError);  // duration 0
  CHECK_THROWS_AS(parse_taillard("2\n"), ParseError);                      // header arity
  CHECK_THROWS_AS(parse_taillard("2 2\n0 2 1 3\n"), ParseError);           // missing job
  CHECK_THROWS_AS(parse_taillard("1 1\n0 2\n0 3\n"), ParseError);          // extra job
  CHECK_THROWS_AS(parse_taillard(""), ParseError);                         // no header
}

TEST_CASE("taillard text round-trips generated instances") {
  for (int seed = 1; seed <= 20; ++seed) {
    const JobShopInstance instance =
        generate_instance(static_cast<std::uint64_t>(seed), 3 + seed % 5, 2 + seed % 4, 1, 9);
    const JobShopInstance reparsed = parse_taillard(serialize_taillard(instance));
    REQUIRE(reparsed.job_count() == instance.job_count());
    CHECK(reparsed.machine_count() == instance.machine_count());
    for (int j = 0; j < instance.job_count(); ++j) {
      REQUIRE(reparsed.job(j).operations.size() == instance.job(j).operations.size());
      for (std::size_t k = 0; k < instance.job(j).operations.size(); ++k) {
        CHECK(reparsed.job(j).operations[k].machine == instance.job(j).operations[k].machine);
        CHECK(reparsed.job(j).operations[k].duration ==
              instance.job(j).operations[k].duration);
      }
    }
  }
}

TEST_CASE("generation is deterministic per seed and always valid") {
  const JobShopInstance a = generate_instance(1, 4, 3, 1, 5);
  const JobShopInstance b = generate_instance(1, 4, 3, 1, 5);
  CHECK(serialize_taillard(a) == serialize_taillard(b));
  CHECK(validate_instance(a).empty());
  // Different seeds are not required to differ, only permitted to.
  const JobShopInstance c = generate_instance(2, 4, 3, 1, 5);
  CHECK(validate_instance(c).empty());
}

TEST_CASE("every job visits every machine exactly once") {
  const JobShopInstance instance = generate_instance(7, 5, 4, 1, 9);
  for (const JobSpec& job : instance.jobs()) {
    REQUIRE(job.operations.size() == 4);
    std::vector<bool> seen(4, false);
    for (const OperationSpec& op : job.operations) {
      CHECK_FALSE(seen[static_cast<std::size_t>(op.machine)]);
      seen[static_cast<std::size_t>(op.machine)] = true;
    }
  }
}

TEST_CASE("a 100x20 instance parses to 2000 operations") {
  const JobShopInstance generated = generate_instance(42, 100, 20, 1, 99);
  const JobShopInstance instance = parse_taillard(serialize_taillard(generated));
  CHECK(instance.job_count() == 100);
  CHECK(instance.machine_count() == 20);
  CHECK(instance.operation_count() == 2000);
}

TEST_CASE("instance documents round-trip utilities, background and optimum") {
  InstanceDocument document;
  document.name = "golden";
  document.instance = golden_instance_with_utilities();
  document.background = JobSet::of(4, {3});
  document.optimum = 9;

  const InstanceDocument reparsed =
      parse_instance_document(serialize_instance_document(document));
  CHECK(reparsed.name == "golden");
  CHECK(reparsed.instance.machine_count() == 3);
  REQUIRE(reparsed.instance.job_count() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(reparsed.instance.job(j).utility == document.instance.job(j).utility);
  }
  REQUIRE(reparsed.background.has_value());
  CHECK(*reparsed.background == JobSet::of(4, {3}));
  CHECK(reparsed.optimum == 9);
}

TEST_CASE("document parsing validates its contents") {
  CHECK_THROWS_AS(parse_instance_document("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance_document("{\"machines\": 2}"), ParseError);
  CHECK_THROWS_AS(
      parse_instance_document(
          R"({"machines": 1, "jobs": [{"operations": [[3, 2]]}]})"),
      ParseError);  // machine out of range
  CHECK_THROWS_AS(
      parse_instance_document(
          R"({"machines": 1, "jobs": [{"operations": [[0, 1]]}], "background": [5]})"),
      ParseError);
}

TEST_CASE("schedule JSON round-trips") {
  const Schedule schedule = golden_optimal_schedule();
  const Schedule reparsed = parse_schedule(serialize_schedule(schedule));
  CHECK(reparsed == schedule);
}

TEST_CASE("load_instance_file dispatches on the extension") {
  const std::string taillard_path = "/tmp/jobset-io-test.txt";
  const std::string json_path = "/tmp/jobset-io-test.json";
  {
    std::ofstream out(taillard_path);
    out << serialize_taillard(golden_instance());
  }
  {
    InstanceDocument document;
    document.name = "golden";
    document.instance = golden_instance();
    document.optimum = 9;
    std::ofstream out(json_path);
    out << serialize_instance_document(document);
  }
  const InstanceDocument from_text = load_instance_file(taillard_path);
  CHECK(from_text.instance.job_count() == 4);
  CHECK_FALSE(from_text.optimum.has_value());
  CHECK(from_text.name == "jobset-io-test.txt");

  const InstanceDocument from_json = load_instance_file(json_path);
  CHECK(from_json.instance.job_count() == 4);
  CHECK(from_json.optimum == 9);

  CHECK_THROWS_AS(load_instance_file("/tmp/jobset-io-missing.txt"), ParseError);
  std::remove(taillard_path.c_str());
  std::remove(json_path.c_str());
}

TEST_SUITE_END();
