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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace preop {

/// A pair (x, q): the true state and the intruder's current-state estimate.
struct EstimatorState
{
    StateIndex state;
    StateSet estimate;

    bool operator==(const EstimatorState&) const = default;
};

/// A finite run x0 -u1-> x1 ... -un-> xn of a metric system.
struct Run
{
    std::vector<StateIndex> states;
    std::vector<InputIndex> inputs; // inputs[i] labels states[i] -> states[i+1]

    std::size_t length() const noexcept { return inputs.size(); }
};

/// Throws input_error unless run starts in an initial state and follows transitions.
void check_run(const MetricSystem& s, const Run& run);

/// Initial estimator states: every initial x paired with the initial states
/// whose outputs are within delta of H(x). Throws input_error if delta < 0.
std::vector<EstimatorState> initial_observer_states(const MetricSystem& s, double delta);

/// One estimator transition along (node.state, u, next). The new estimate is
/// the one-step successor set of the whole current estimate, filtered by
/// delta-closeness to H(next). Throws input_error if the transition is not in s.
EstimatorState observer_step(const MetricSystem& s, double delta, const EstimatorState& node, InputIndex u,
                             StateIndex next);

using NodeIndex = std::uint32_t;
using EstimateId = std::uint32_t;

struct ObserverNode
{
    StateIndex state;
    EstimateId estimate;
};

struct ObserverEdge
{
    NodeIndex from;
    InputIndex input;
    NodeIndex to;
};

/// The reachable part of the delta-approximate current-state estimator.
///
/// Estimate sets are interned: equal sets share one EstimateId, so two nodes
/// are equal exactly when their (state, estimate id) pairs are equal. Node
/// indices follow breadth-first discovery order from the sorted initial nodes,
/// and out-edges are stored sorted by (input, target state).
class Observer
{
public:
    double delta() const noexcept { return delta_; }
    std::size_t num_nodes() const noexcept { return nodes_.size(); }
    std::size_t num_estimates() const noexcept { return estimates_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    const ObserverNode& node(NodeIndex i) const { return nodes_.at(i); }
    const StateSet& estimate(EstimateId e) const { return estimates_.at(e); }
    const StateSet& estimate_of(NodeIndex i) const { return estimates_.at(nodes_.at(i).estimate); }
    EstimatorState estimator_state(NodeIndex i) const { return {node(i).state, estimate_of(i)}; }

    const std::vector<NodeIndex>& initial_nodes() const noexcept { return initial_; }
    bool is_initial(NodeIndex i) const;
    const std::vector<ObserverEdge>& edges() const noexcept { return edges_; }
    /// Indices into edges() leaving node i.
    const std::vector<std::size_t>& out_edges(NodeIndex i) const { return out_.at(i); }

    /// Node index of (x, q) if reachable.
    std::optional<NodeIndex> find(const EstimatorState& st) const;

private:
    friend Observer build_observer(const MetricSystem& s, double delta);

    double delta_ = 0.0;
    std::vector<StateSet> estimates_;
    std::map<StateSet, EstimateId> estimate_ids_;
    std::vector<ObserverNode> nodes_;
    std::unordered_map<std::uint64_t, NodeIndex> node_ids_;
    std::vector<NodeIndex> initial_;
    std::vector<ObserverEdge> edges_;
    std::vector<std::vector<std::size_t>> out_;
};

/// Breadth-first closure of the initial estimator states under observer_step.
Observer build_observer(const MetricSystem& s, double delta);

/// Brute-force estimate: final states of every run of the same length from
/// any initial state whose outputs stay pointwise within delta of run's outputs.
/// Independent of the observer construction.
StateSet estimate_of_run(const MetricSystem& s, double delta, const Run& run);

/// Observer graph in DOT syntax; nodes labeled "x | {q}", initial nodes doublecircle.
std::string observer_to_dot(const MetricSystem& s, const Observer& obs);

/// "{a, b, c}" rendering of a state set.
std::string format_set(const MetricSystem& s, const StateSet& q);

} // namespace preop
