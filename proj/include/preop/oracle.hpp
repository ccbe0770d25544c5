/*
 * Copyright 2026 The preop Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "preop/system.hpp"
#include "preop/verify.hpp"

#include <cstddef>

namespace preop {

inline constexpr std::size_t kDefaultOracleBudget = 20'000'000;

struct OracleQuery
{
    double delta = 0.0;
    unsigned k = 0;
    /// Longest observed run prefix that is explored. Must be at least 1.
    unsigned horizon = 1;
    /// Maximum number of run prefixes visited before giving up.
    std::size_t node_budget = kDefaultOracleBudget;
    /// Skip a run prefix whose (last state, consistent set) pair was already
    /// explored with at least as much remaining horizon. Its continuations
    /// are then exactly the ones already checked.
    bool prune_revisits = true;
};

/// Bounded brute-force decision of delta-approximate k-step pre-opacity,
/// straight from the quantifiers of the definition.
///
/// Every run of length n <= horizon from every initial state is enumerated.
/// Along it, the set of final states of all delta-close runs is tracked.
/// A violation is reported when, for some t >= k, every t-step continuation
/// of every such run ends in a secret state (vacuously so when none exists).
/// All t >= k are covered by iterating the forward image of the consistent
/// set until it repeats. Neither the estimator graph nor the backward
/// indicator sets are used.
///
/// Throws input_error for bad queries, resource_error when the budget runs out.
Verdict oracle_verify(const MetricSystem& s, const OracleQuery& query);

} // namespace preop
