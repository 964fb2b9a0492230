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
#include <optional>
#include <stdexcept>
#include <string>

namespace jobset {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text could not be parsed. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::string message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + std::move(message)
                       : std::move(message)),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A schedule's keys do not cover exactly the operations of the job subset
// it is evaluated against.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// A search ran out of its node or time budget before reaching a verdict.
// Carries the tightest makespan bounds proven before the abort.
class BudgetExhaustedError : public Error {
 public:
  BudgetExhaustedError(std::string message, std::int64_t lower_bound,
                       std::optional<std::int64_t> upper_bound)
      : Error(std::move(message)),
        lower_bound_(lower_bound),
        upper_bound_(upper_bound) {}
  explicit BudgetExhaustedError(std::string message)
      : BudgetExhaustedError(std::move(message), 0, std::nullopt) {}

  std::int64_t lower_bound() const { return lower_bound_; }
  std::optional<std::int64_t> upper_bound() const { return upper_bound_; }

 private:
  std::int64_t lower_bound_;
  std::optional<std::int64_t> upper_bound_;
};

// No job removal can restore consistency (the background alone already
// exceeds the deadline).
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

// A depth-limited search exhausted every node within the limit without
// finding a solution; deeper solutions may exist.
class NoSolutionWithinDepthError : public NoSolutionError {
 public:
  using NoSolutionError::NoSolutionError;
};

// An oracle session was driven into a state where some conflict has all of
// its jobs committed to the background.
class UnsolvableError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace jobset
