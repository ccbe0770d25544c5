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

#include "preop/estimator.hpp"
#include "preop/system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace preop {

/// States all of whose successors, under every enabled input, lie in q.
/// Deadlocked states belong to the result vacuously. Throws input_error if q
/// names a state outside the system.
StateSet backward_operator(const MetricSystem& s, const StateSet& q);

/// T_n: the backward operator applied n times to the secret set, i.e. the
/// states from which no n-step run ends outside the secret set.
struct IndicatorSet
{
    unsigned n = 0;
    StateSet members;
};

/// Stops iterating once the sequence repeats, so large n is cheap.
IndicatorSet indicator(const MetricSystem& s, unsigned n);

/// Every distinct indicator set T_t with t >= k, each tagged with the smallest
/// such t. The sequence T_0, T_1, ... over a finite state set is eventually
/// periodic, so the list is finite; it starts with T_k.
std::vector<IndicatorSet> indicator_tail(const MetricSystem& s, unsigned k);

struct WitnessStep
{
    StateIndex state;
    std::optional<InputIndex> input; // input taken to reach this state; empty for the first step
    StateSet estimate;
};

struct Verdict
{
    bool holds = true;
    double delta = 0.0;
    unsigned k = 0;
    std::size_t observer_nodes = 0;
    std::string method = "observer";
    /// Present exactly when holds is false. Its last estimate is contained in
    /// the indicator set for step violated_at.
    std::optional<std::vector<WitnessStep>> witness;
    /// Prediction step t >= k at which the intruder becomes certain. Equals k
    /// on non-blocking systems.
    std::optional<unsigned> violated_at;
    std::vector<std::string> warnings;
};

/// Decides delta-approximate k-step pre-opacity with the current-state
/// estimator: the property fails iff some reachable estimate is contained in
/// the k-step indicator. Returns a shortest violating estimator run otherwise.
///
/// On systems with deadlocks, containment in a later indicator T_t (t > k)
/// is also a violation, and is searched for when no node hits T_k.
Verdict verify_preopacity(const MetricSystem& s, double delta, unsigned k);

/// Same as above, reusing an already built observer for delta.
Verdict verify_preopacity(const MetricSystem& s, const Observer& obs, unsigned k);

/// Human-readable rendering of a violating verdict. Throws input_error when
/// the verdict holds.
std::string extract_witness(const Verdict& verdict, const MetricSystem& s);

} // namespace preop
