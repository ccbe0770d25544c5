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

#include "preop/estimator.hpp"

#include "preop/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace preop {

namespace {

void require_delta(double delta)
{
    if (!(delta >= 0.0))
        throw input_error("delta must be non-negative");
}

std::uint64_t node_key(StateIndex x, EstimateId e)
{
    return (std::uint64_t{x} << 32) | e;
}

} // namespace

void check_run(const MetricSystem& s, const Run& run)
{
    if (run.states.empty())
        throw input_error("run has no states");
    if (run.states.size() != run.inputs.size() + 1)
        throw input_error("run must alternate states and inputs");
    for (auto x : run.states)
        if (x >= s.num_states())
            throw input_error("run visits an undeclared state");
    for (auto u : run.inputs)
        if (u >= s.num_inputs())
            throw input_error("run uses an undeclared input");
    if (!s.is_initial(run.states.front()))
        throw input_error("run does not start in an initial state");
    for (std::size_t i = 0; i < run.inputs.size(); ++i)
        if (!s.has_transition(run.states[i], run.inputs[i], run.states[i + 1]))
            throw input_error("run step " + std::to_string(i) + " is not a transition");
}

std::vector<EstimatorState> initial_observer_states(const MetricSystem& s, double delta)
{
    require_delta(delta);
    std::vector<EstimatorState> out;
    for (auto x : s.initial_states()) {
        EstimatorState st{x, {}};
        for (auto y : s.initial_states())
            if (within(s.distance(x, y), delta))
                st.estimate.push_back(y);
        out.push_back(std::move(st));
    }
    return out;
}

EstimatorState observer_step(const MetricSystem& s, double delta, const EstimatorState& node, InputIndex u,
                             StateIndex next)
{
    require_delta(delta);
    if (node.state >= s.num_states() || u >= s.num_inputs() || next >= s.num_states() ||
        !s.has_transition(node.state, u, next))
        throw input_error("observer step does not follow a transition of the system");
    EstimatorState out{next, {}};
    for (auto y : s.post(node.estimate))
        if (within(s.distance(next, y), delta))
            out.estimate.push_back(y);
    return out;
}

bool Observer::is_initial(NodeIndex i) const
{
    return std::find(initial_.begin(), initial_.end(), i) != initial_.end();
}

std::optional<NodeIndex> Observer::find(const EstimatorState& st) const
{
    auto e = estimate_ids_.find(st.estimate);
    if (e == estimate_ids_.end())
        return std::nullopt;
    auto n = node_ids_.find(node_key(st.state, e->second));
    if (n == node_ids_.end())
        return std::nullopt;
    return n->second;
}

Observer build_observer(const MetricSystem& s, double delta)
{
    require_delta(delta);
    Observer obs;
    obs.delta_ = delta;

    auto intern = [&](StateSet q) {
        auto [it, inserted] = obs.estimate_ids_.emplace(std::move(q), static_cast<EstimateId>(obs.estimates_.size()));
        if (inserted)
            obs.estimates_.push_back(it->first);
        return it->second;
    };
    std::deque<NodeIndex> work;
    auto add_node = [&](EstimatorState st) {
        auto e = intern(std::move(st.estimate));
        auto [it, inserted] = obs.node_ids_.emplace(node_key(st.state, e), static_cast<NodeIndex>(obs.nodes_.size()));
        if (inserted) {
            obs.nodes_.push_back({st.state, e});
            obs.out_.emplace_back();
            work.push_back(it->second);
        }
        return it->second;
    };

    for (auto& st : initial_observer_states(s, delta))
        obs.initial_.push_back(add_node(std::move(st)));

    while (!work.empty()) {
        auto n = work.front();
        work.pop_front();
        const auto x = obs.nodes_[n].state;
        // The filtered successor set only depends on the target's output, so
        // compute the image of the estimate once per node.
        const auto image = s.post(obs.estimates_[obs.nodes_[n].estimate]);
        for (auto u : s.enabled_inputs(x)) {
            for (auto next : s.successors(x, u)) {
                EstimatorState st{next, {}};
                for (auto y : image)
                    if (within(s.distance(next, y), delta))
                        st.estimate.push_back(y);
                auto to = add_node(std::move(st));
                obs.out_[n].push_back(obs.edges_.size());
                obs.edges_.push_back({n, u, to});
            }
        }
    }
    return obs;
}

StateSet estimate_of_run(const MetricSystem& s, double delta, const Run& run)
{
    require_delta(delta);
    check_run(s, run);
    const auto n = run.length();
    std::vector<bool> final(s.num_states(), false);

    // Depth-first enumeration of every candidate run, abandoned as soon as one
    // of its outputs is farther than delta from the observed one.
    std::function<void(StateIndex, std::size_t)> explore = [&](StateIndex x, std::size_t i) {
        if (!within(s.distance(run.states[i], x), delta))
            return;
        if (i == n) {
            final[x] = true;
            return;
        }
        for (auto u : s.enabled_inputs(x))
            for (auto y : s.successors(x, u))
                explore(y, i + 1);
    };
    for (auto x0 : s.initial_states())
        explore(x0, 0);

    StateSet out;
    for (StateIndex x = 0; x < final.size(); ++x)
        if (final[x])
            out.push_back(x);
    return out;
}

std::string format_set(const MetricSystem& s, const StateSet& q)
{
    std::string out = "{";
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (i)
            out += ", ";
        out += s.state_id(q[i]);
    }
    return out + "}";
}

namespace {

std::string dot_escape(const std::string& in)
{
    std::string out;
    for (char c : in) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string observer_to_dot(const MetricSystem& s, const Observer& obs)
{
    std::ostringstream os;
    os << "digraph observer {\n  rankdir=LR;\n";
    for (NodeIndex i = 0; i < obs.num_nodes(); ++i) {
        const auto& nd = obs.node(i);
        os << "  n" << i << " [label=\""
           << dot_escape(s.state_id(nd.state) + " | " + format_set(s, obs.estimate(nd.estimate))) << "\"";
        os << (obs.is_initial(i) ? ", shape=doublecircle" : ", shape=circle");
        os << "];\n";
    }
    std::vector<ObserverEdge> edges = obs.edges();
    std::sort(edges.begin(), edges.end(), [](const ObserverEdge& a, const ObserverEdge& b) {
        return std::tie(a.from, a.input, a.to) < std::tie(b.from, b.input, b.to);
    });
    for (const auto& e : edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << dot_escape(s.input_id(e.input)) << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace preop
