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

#include "preop/system.hpp"

#include "preop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace preop {

double output_distance(const OutputPoint& a, const OutputPoint& b)
{
    if (a.dim() != b.dim())
        throw input_error("output dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
    double d = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        d = std::max(d, std::abs(a.coords[i] - b.coords[i]));
    return d;
}

ValidationReport validate_system(const SystemDescription& desc)
{
    ValidationReport report;
    auto& errors = report.errors;

    std::unordered_set<std::string> states;
    for (const auto& x : desc.states)
        if (!states.insert(x).second)
            errors.push_back("duplicate state '" + x + "'");
    std::unordered_set<std::string> inputs;
    for (const auto& u : desc.inputs)
        if (!inputs.insert(u).second)
            errors.push_back("duplicate input '" + u + "'");

    if (desc.states.empty())
        errors.push_back("system declares no states");
    if (desc.initial.empty())
        errors.push_back("initial state set is empty");
    for (const auto& x : desc.initial)
        if (!states.contains(x))
            errors.push_back("initial state '" + x + "' is not declared");
    for (const auto& x : desc.secret)
        if (!states.contains(x))
            errors.push_back("secret state '" + x + "' is not declared");

    for (const auto& t : desc.transitions) {
        if (!states.contains(t.from))
            errors.push_back("transition source '" + t.from + "' is not declared");
        if (!inputs.contains(t.input))
            errors.push_back("transition input '" + t.input + "' is not declared");
        if (!states.contains(t.to))
            errors.push_back("transition target '" + t.to + "' is not declared");
    }

    std::size_t dim = 0;
    bool have_dim = false;
    for (const auto& x : desc.states) {
        auto it = desc.outputs.find(x);
        if (it == desc.outputs.end()) {
            errors.push_back("state '" + x + "' has no output");
            continue;
        }
        const auto& y = it->second;
        if (y.dim() == 0)
            errors.push_back("state '" + x + "' has an empty output vector");
        if (std::any_of(y.coords.begin(), y.coords.end(), [](double v) { return !std::isfinite(v); }))
            errors.push_back("state '" + x + "' has a non-finite output");
        if (!have_dim) {
            dim = y.dim();
            have_dim = true;
        } else if (y.dim() != dim) {
            errors.push_back("state '" + x + "' output dimension " + std::to_string(y.dim()) +
                             " differs from " + std::to_string(dim));
        }
    }
    for (const auto& [x, y] : desc.outputs)
        if (!states.contains(x))
            errors.push_back("output given for undeclared state '" + x + "'");

    std::set<std::string> enabled;
    for (const auto& t : desc.transitions)
        enabled.insert(t.from);
    for (const auto& x : desc.states)
        if (!enabled.contains(x))
            report.warnings.push_back("deadlock: state '" + x + "' has no enabled input");
    return report;
}

ValidationReport validate_system(const MetricSystem& system)
{
    ValidationReport report;
    for (StateIndex x = 0; x < system.num_states(); ++x)
        if (system.is_deadlock(x))
            report.warnings.push_back("deadlock: state '" + system.state_id(x) + "' has no enabled input");
    return report;
}

MetricSystem MetricSystem::compile(const SystemDescription& desc)
{
    auto report = validate_system(desc);
    if (!report.ok()) {
        std::string msg = "invalid system:";
        for (const auto& e : report.errors)
            msg += "\n  " + e;
        throw input_error(msg);
    }

    MetricSystem s;
    s.state_ids_ = desc.states;
    s.input_ids_ = desc.inputs;
    for (StateIndex i = 0; i < s.state_ids_.size(); ++i)
        s.state_lookup_.emplace(s.state_ids_[i], i);
    for (InputIndex i = 0; i < s.input_ids_.size(); ++i)
        s.input_lookup_.emplace(s.input_ids_[i], i);

    const auto n = s.state_ids_.size();
    const auto m = s.input_ids_.size();
    for (const auto& x : s.state_ids_)
        s.outputs_.push_back(desc.outputs.at(x));
    s.output_dim_ = s.outputs_.front().dim();

    s.initial_mask_.assign(n, false);
    s.secret_mask_.assign(n, false);
    for (const auto& x : desc.initial)
        s.initial_mask_[s.state_lookup_.at(x)] = true;
    for (const auto& x : desc.secret)
        s.secret_mask_[s.state_lookup_.at(x)] = true;
    for (StateIndex x = 0; x < n; ++x) {
        if (s.initial_mask_[x])
            s.initial_.push_back(x);
        if (s.secret_mask_[x])
            s.secret_.push_back(x);
    }

    s.succ_.assign(n * m, {});
    s.post_.assign(n, {});
    s.pre_.assign(n, {});
    s.enabled_.assign(n, {});
    for (const auto& t : desc.transitions) {
        auto x = s.state_lookup_.at(t.from);
        auto u = s.input_lookup_.at(t.input);
        auto y = s.state_lookup_.at(t.to);
        s.succ_[x * m + u].push_back(y);
        s.post_[x].push_back(y);
        s.pre_[y].push_back(x);
    }
    auto normalize = [](StateSet& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    for (auto& v : s.succ_) {
        normalize(v);
        s.num_transitions_ += v.size();
    }
    for (auto& v : s.post_)
        normalize(v);
    for (auto& v : s.pre_)
        normalize(v);
    for (StateIndex x = 0; x < n; ++x)
        for (InputIndex u = 0; u < m; ++u)
            if (!s.succ_[x * m + u].empty())
                s.enabled_[x].push_back(u);
    return s;
}

StateIndex MetricSystem::state_index(const std::string& id) const
{
    auto it = state_lookup_.find(id);
    if (it == state_lookup_.end())
        throw input_error("undeclared state '" + id + "'");
    return it->second;
}

InputIndex MetricSystem::input_index(const std::string& id) const
{
    auto it = input_lookup_.find(id);
    if (it == input_lookup_.end())
        throw input_error("undeclared input '" + id + "'");
    return it->second;
}

double MetricSystem::distance(StateIndex x, StateIndex y) const
{
    return output_distance(outputs_.at(x), outputs_.at(y));
}

std::span<const StateIndex> MetricSystem::successors(StateIndex x, InputIndex u) const
{
    if (x >= num_states() || u >= num_inputs())
        throw input_error("successor query out of range");
    return succ_[x * num_inputs() + u];
}

bool MetricSystem::has_transition(StateIndex x, InputIndex u, StateIndex y) const
{
    auto succ = successors(x, u);
    return std::binary_search(succ.begin(), succ.end(), y);
}

StateSet MetricSystem::post(const StateSet& q) const
{
    std::vector<bool> mark(num_states(), false);
    for (auto x : q)
        for (auto y : post_.at(x))
            mark[y] = true;
    StateSet out;
    for (StateIndex y = 0; y < mark.size(); ++y)
        if (mark[y])
            out.push_back(y);
    return out;
}

SystemDescription MetricSystem::describe() const
{
    SystemDescription d;
    d.states = state_ids_;
    d.inputs = input_ids_;
    d.initial = ids_of(*this, initial_);
    d.secret = ids_of(*this, secret_);
    for (StateIndex x = 0; x < num_states(); ++x) {
        d.outputs.emplace(state_ids_[x], outputs_[x]);
        for (InputIndex u = 0; u < num_inputs(); ++u)
            for (auto y : successors(x, u))
                d.transitions.push_back({state_ids_[x], input_ids_[u], state_ids_[y]});
    }
    return d;
}

std::vector<std::string> successors(const MetricSystem& s, const std::string& x, const std::string& u)
{
    std::vector<std::string> out;
    for (auto y : s.successors(s.state_index(x), s.input_index(u)))
        out.push_back(s.state_id(y));
    return out;
}

std::vector<std::string> enabled_inputs(const MetricSystem& s, const std::string& x)
{
    std::vector<std::string> out;
    for (auto u : s.enabled_inputs(s.state_index(x)))
        out.push_back(s.input_id(u));
    return out;
}

std::vector<std::string> ids_of(const MetricSystem& s, const StateSet& q)
{
    std::vector<std::string> out;
    out.reserve(q.size());
    for (auto x : q)
        out.push_back(s.state_id(x));
    return out;
}

StateSet indices_of(const MetricSystem& s, const std::vector<std::string>& ids)
{
    StateSet out;
    for (const auto& id : ids)
        out.push_back(s.state_index(id));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_subset(const StateSet& a, const StateSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace preop
