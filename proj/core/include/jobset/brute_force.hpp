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

#include "jobset/instance.hpp"

namespace jobset {

// Exact optimal makespan of the subset, computed by exhaustively enumerating
// active schedules with Giffler-Thompson conflict-set branching. Every
// regular-objective optimum is attained by an active schedule, so the minimum
// over the enumeration is the true optimum. A branch is skipped only when its
// partial completion time already reaches the best enumerated value, which
// cannot change the minimum.
//
// Intended as a test oracle for desk-scale subsets (<= ~8 jobs, ~4 machines).
// Uses no bounds, heuristics or thresholds shared with the search engine.
//
// Returns 0 for the empty subset. Throws BudgetExhaustedError when the
// enumeration exceeds `max_nodes` branch expansions.
Time brute_force_optimal_makespan(const JobShopInstance& instance, const JobSet& subset,
                                  std::int64_t max_nodes = 200'000'000);

}  // namespace jobset
