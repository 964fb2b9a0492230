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

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace jobset {

// Dense bit set over the job ids 0..universe_size-1 of one instance.
// All set operations require both operands to share the same universe.
class JobSet {
 public:
  JobSet() = default;
  explicit JobSet(int universe_size);

  static JobSet all(int universe_size);
  static JobSet of(int universe_size, std::initializer_list<int> ids);
  static JobSet from_ids(int universe_size, const std::vector<int>& ids);

  int universe_size() const { return universe_size_; }
  int count() const;
  bool empty() const { return count() == 0; }

  bool contains(int job) const;
  void insert(int job);
  void erase(int job);

  bool is_subset_of(const JobSet& other) const;
  bool intersects(const JobSet& other) const;

  JobSet union_with(const JobSet& other) const;
  JobSet intersection(const JobSet& other) const;
  JobSet difference(const JobSet& other) const;
  JobSet complement() const;

  JobSet with(int job) const;
  JobSet without(int job) const;

  // Ascending job ids.
  std::vector<int> ids() const;

  bool operator==(const JobSet& other) const = default;

  // Total order: by ascending id sequence, shorter prefixes first.
  // Used only as a deterministic tie breaker.
  static bool lex_less(const JobSet& a, const JobSet& b);

  const std::vector<std::uint64_t>& words() const { return words_; }

  std::string to_string() const;  // "{0, 2, 3}"

 private:
  void check_job(int job) const;
  void check_universe(const JobSet& other) const;

  int universe_size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace jobset
