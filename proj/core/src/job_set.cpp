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

#include "jobset/job_set.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace jobset {

namespace {
constexpr int kWordBits = 64;

int word_count(int universe_size) { return (universe_size + kWordBits - 1) / kWordBits; }
}  // namespace

JobSet::JobSet(int universe_size)
    : universe_size_(universe_size), words_(word_count(universe_size), 0) {
  if (universe_size < 0) throw std::invalid_argument("negative universe size");
}

JobSet JobSet::all(int universe_size) {
  JobSet s(universe_size);
  for (int j = 0; j < universe_size; ++j) s.insert(j);
  return s;
}

JobSet JobSet::of(int universe_size, std::initializer_list<int> ids) {
  JobSet s(universe_size);
  for (int j : ids) s.insert(j);
  return s;
}

JobSet JobSet::from_ids(int universe_size, const std::vector<int>& ids) {
  JobSet s(universe_size);
  for (int j : ids) s.insert(j);
  return s;
}

void JobSet::check_job(int job) const {
  if (job < 0 || job >= universe_size_) {
    throw std::out_of_range("job id " + std::to_string(job) + " outside universe of size " +
                            std::to_string(universe_size_));
  }
}

int JobSet::count() const {
  int n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool JobSet::contains(int job) const {
  if (job < 0 || job >= universe_size_) return false;
  return (words_[job / kWordBits] >> (job % kWordBits)) & 1u;
}

void JobSet::insert(int job) {
  check_job(job);
  words_[job / kWordBits] |= std::uint64_t{1} << (job % kWordBits);
}

void JobSet::erase(int job) {
  check_job(job);
  words_[job / kWordBits] &= ~(std::uint64_t{1} << (job % kWordBits));
}

void JobSet::check_universe(const JobSet& other) const {
  if (universe_size_ != other.universe_size_) {
    throw std::invalid_argument("job sets belong to different universes (" +
                                std::to_string(universe_size_) + " vs " +
                                std::to_string(other.universe_size_) + ")");
  }
}

bool JobSet::is_subset_of(const JobSet& other) const {
  check_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool JobSet::intersects(const JobSet& other) const {
  check_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

JobSet JobSet::union_with(const JobSet& other) const {
  check_universe(other);
  JobSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
  return out;
}

JobSet JobSet::intersection(const JobSet& other) const {
  check_universe(other);
  JobSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
  return out;
}

JobSet JobSet::difference(const JobSet& other) const {
  check_universe(other);
  JobSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= ~other.words_[i];
  return out;
}

JobSet JobSet::complement() const {
  JobSet out(universe_size_);
  for (int j = 0; j < universe_size_; ++j) {
    if (!contains(j)) out.insert(j);
  }
  return out;
}

JobSet JobSet::with(int job) const {
  JobSet out = *this;
  out.insert(job);
  return out;
}

JobSet JobSet::without(int job) const {
  JobSet out = *this;
  out.erase(job);
  return out;
}

std::vector<int> JobSet::ids() const {
  std::vector<int> out;
  for (int j = 0; j < universe_size_; ++j) {
    if (contains(j)) out.push_back(j);
  }
  return out;
}

bool JobSet::lex_less(const JobSet& a, const JobSet& b) {
  const std::vector<int> ia = a.ids();
  const std::vector<int> ib = b.ids();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

std::string JobSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int j : ids()) {
    if (!first) os << ", ";
    os << j;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace jobset
