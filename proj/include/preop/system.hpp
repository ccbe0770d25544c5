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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace preop {

using StateIndex = std::uint32_t;
using InputIndex = std::uint32_t;

/// Sorted, duplicate-free set of state indices.
using StateSet = std::vector<StateIndex>;

/// Slack applied to every "distance <= bound" comparison so that outputs that
/// are mathematically equal but differ by floating-point rounding (for example
/// |cos(0.1*pi)| and |cos(0.9*pi)|) are treated as indistinguishable.
inline constexpr double kDistanceSlack = 1e-9;

inline bool within(double distance, double bound) noexcept
{
    return distance <= bound + kDistanceSlack;
}

struct OutputPoint
{
    std::vector<double> coords;

    std::size_t dim() const noexcept { return coords.size(); }
    bool operator==(const OutputPoint&) const = default;
};

/// Infinity-norm distance. Throws input_error on dimension mismatch.
double output_distance(const OutputPoint& a, const OutputPoint& b);

struct TransitionTriple
{
    std::string from;
    std::string input;
    std::string to;
};

/// Raw, possibly inconsistent description of a finite metric system. This is
/// what file readers and builders produce; validate_system() inspects it and
/// MetricSystem::compile() turns a clean one into the indexed form.
struct SystemDescription
{
    std::vector<std::string> states;
    std::vector<std::string> initial;
    std::vector<std::string> secret;
    std::vector<std::string> inputs;
    std::vector<TransitionTriple> transitions;
    std::map<std::string, OutputPoint> outputs;
};

struct ValidationReport
{
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return errors.empty(); }
};

class MetricSystem;

ValidationReport validate_system(const SystemDescription& desc);

/// Warnings only; a compiled system has no structural errors by construction.
ValidationReport validate_system(const MetricSystem& system);

/// Immutable, index-based finite metric transition system with secret states.
///
/// States and inputs keep their declaration order; all set-valued queries
/// return sorted index vectors.
class MetricSystem
{
public:
    /// Throws input_error carrying every validation error when desc is invalid.
    static MetricSystem compile(const SystemDescription& desc);

    std::size_t num_states() const noexcept { return state_ids_.size(); }
    std::size_t num_inputs() const noexcept { return input_ids_.size(); }
    std::size_t num_transitions() const noexcept { return num_transitions_; }
    std::size_t output_dim() const noexcept { return output_dim_; }

    const std::string& state_id(StateIndex x) const { return state_ids_.at(x); }
    const std::string& input_id(InputIndex u) const { return input_ids_.at(u); }
    const std::vector<std::string>& state_ids() const noexcept { return state_ids_; }
    const std::vector<std::string>& input_ids() const noexcept { return input_ids_; }

    /// Throw input_error for undeclared identifiers.
    StateIndex state_index(const std::string& id) const;
    InputIndex input_index(const std::string& id) const;
    bool has_state(const std::string& id) const { return state_lookup_.contains(id); }

    const OutputPoint& output(StateIndex x) const { return outputs_.at(x); }
    double distance(StateIndex x, StateIndex y) const;

    bool is_initial(StateIndex x) const { return initial_mask_.at(x); }
    bool is_secret(StateIndex x) const { return secret_mask_.at(x); }
    const StateSet& initial_states() const noexcept { return initial_; }
    const StateSet& secret_states() const noexcept { return secret_; }

    /// u-successors of x.
    std::span<const StateIndex> successors(StateIndex x, InputIndex u) const;
    /// Successors of x under any input.
    const StateSet& post(StateIndex x) const { return post_.at(x); }
    /// Predecessors of x under any input.
    const StateSet& pre(StateIndex x) const { return pre_.at(x); }
    /// Inputs u with a nonempty u-successor set at x.
    const std::vector<InputIndex>& enabled_inputs(StateIndex x) const { return enabled_.at(x); }
    bool is_deadlock(StateIndex x) const { return enabled_.at(x).empty(); }
    bool has_transition(StateIndex x, InputIndex u, StateIndex y) const;

    /// Union of post(x) over x in q.
    StateSet post(const StateSet& q) const;

    /// The raw description this system was compiled from (flags rebuilt).
    SystemDescription describe() const;

private:
    MetricSystem() = default;

    std::vector<std::string> state_ids_;
    std::vector<std::string> input_ids_;
    std::unordered_map<std::string, StateIndex> state_lookup_;
    std::unordered_map<std::string, InputIndex> input_lookup_;
    std::vector<OutputPoint> outputs_;
    std::size_t output_dim_ = 0;
    std::vector<bool> initial_mask_;
    std::vector<bool> secret_mask_;
    StateSet initial_;
    StateSet secret_;
    std::vector<StateSet> succ_; // indexed by x * num_inputs + u
    std::vector<StateSet> post_;
    std::vector<StateSet> pre_;
    std::vector<std::vector<InputIndex>> enabled_;
    std::size_t num_transitions_ = 0;
};

// Identifier-level convenience wrappers mirroring the textbook notation
// U^post_u(x) and U(x). They throw input_error for undeclared identifiers.
std::vector<std::string> successors(const MetricSystem& s, const std::string& x, const std::string& u);
std::vector<std::string> enabled_inputs(const MetricSystem& s, const std::string& x);

/// Ids of the given states, in index order.
std::vector<std::string> ids_of(const MetricSystem& s, const StateSet& q);
/// Indices of the given ids, sorted. Throws input_error on undeclared ids.
StateSet indices_of(const MetricSystem& s, const std::vector<std::string>& ids);

bool is_subset(const StateSet& a, const StateSet& b);

} // namespace preop
