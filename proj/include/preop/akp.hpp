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

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace preop {

// Approximate pre-opacity preserving (AKP) simulation relations from a
// system S_a to a system S_b. A relation R ⊆ X_a × X_b must satisfy
//
//   1a  every initial state of S_a is related to some initial state of S_b
//   1b  every initial state of S_b is related to some initial state of S_a
//   2   related states have outputs within epsilon
//   3a  each move of x_a is matched by some move of x_b into R
//   3b  each move of x_b is matched by some move of x_a into R
//   3c  each move of x_b into a non-secret state is matched by a move of x_a
//       into a non-secret state, again into R
//
// Inputs are not matched: any input on one side may answer any input on the
// other. None of the conditions depends on the prediction horizon, so the
// relation serves every k at once.

using StatePair = std::pair<StateIndex, StateIndex>; // (state of S_a, state of S_b)

struct RelationPairs
{
    std::vector<StatePair> pairs; // sorted
    double epsilon = 0.0;

    bool contains(StateIndex a, StateIndex b) const;
};

/// Every pair of states whose outputs are within epsilon. Throws input_error
/// on output dimension mismatch or negative epsilon.
RelationPairs candidate_relation(const MetricSystem& sa, const MetricSystem& sb, double epsilon);

struct AkpResult
{
    bool related = false;
    /// The maximal relation satisfying conditions 2 and 3 (empty when none).
    /// When related is true it also satisfies condition 1.
    RelationPairs relation;
    /// Conditions among "1a", "1b" that fail on the maximal relation.
    std::vector<std::string> failed_conditions;

    std::optional<std::string> failure_reason() const
    {
        if (failed_conditions.empty())
            return std::nullopt;
        return failed_conditions.front();
    }
};

/// Greatest-fixpoint refinement: starting from the candidate relation, pairs
/// violating 3a, 3b or 3c are removed (and their predecessors rechecked)
/// until nothing changes. The result is the union of all relations meeting
/// conditions 2 and 3, so condition 1 holds for some relation iff it holds
/// for it.
AkpResult max_akp_relation(const MetricSystem& sa, const MetricSystem& sb, double epsilon);

struct RelationViolation
{
    std::string condition; // "1a", "1b", "2", "3a", "3b", "3c"
    std::optional<StateIndex> a;
    std::optional<StateIndex> b;
    std::string detail;
};

/// Lists every violated condition of a user-supplied relation; an empty
/// result means it is an AKP relation. Throws input_error if a pair is out
/// of range.
std::vector<RelationViolation> check_relation(const MetricSystem& sa, const MetricSystem& sb, double epsilon,
                                              const RelationPairs& relation);

/// True when the relation meets conditions 2 and 3; condition 1 is ignored.
bool satisfies_step_conditions(const MetricSystem& sa, const MetricSystem& sb, double epsilon,
                               const RelationPairs& relation);

/// Concrete precision implied when S_a is epsilon-AKP simulated by S_b and
/// S_b is delta_b-approximate pre-opaque: delta_b + 2 epsilon.
double transfer_verdict(double delta_b, double epsilon);

/// Builds a relation from identifier pairs. Throws input_error on unknown ids.
RelationPairs relation_from_ids(const MetricSystem& sa, const MetricSystem& sb,
                                const std::vector<std::pair<std::string, std::string>>& ids, double epsilon);

} // namespace preop
