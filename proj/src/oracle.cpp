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

#include "preop/oracle.hpp"

#include "preop/errors.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace preop {

namespace {

class OracleSearch
{
public:
    OracleSearch(const MetricSystem& s, const OracleQuery& q) : s_(s), q_(q) {}

    Verdict run()
    {
        Verdict v;
        v.delta = q_.delta;
        v.k = q_.k;
        v.method = "oracle";
        v.observer_nodes = 0;
        v.warnings = validate_system(s_).warnings;

        for (auto x0 : s_.initial_states()) {
            StateSet consistent;
            for (auto y : s_.initial_states())
                if (within(s_.distance(x0, y), q_.delta))
                    consistent.push_back(y);
            path_.push_back({x0, std::nullopt, consistent});
            if (explore(0)) {
                v.holds = false;
                v.witness = path_;
                v.violated_at = violated_at_;
                return v;
            }
            path_.pop_back();
        }
        return v;
    }

private:
    // Smallest t >= k such that every t-step continuation from the consistent
    // set ends in a secret state, if any.
    std::optional<unsigned> certain_step(const StateSet& consistent) const
    {
        std::vector<StateSet> images;
        std::map<StateSet, unsigned> seen;
        StateSet cur = consistent;
        unsigned cycle_start = 0;
        while (true) {
            auto [it, inserted] = seen.emplace(cur, static_cast<unsigned>(images.size()));
            if (!inserted) {
                cycle_start = it->second;
                break;
            }
            images.push_back(cur);
            cur = s_.post(cur);
        }
        const auto end = static_cast<unsigned>(images.size());
        const unsigned period = end - cycle_start;
        const unsigned last = std::max(q_.k, end) + period;
        for (unsigned t = q_.k; t < last; ++t) {
            const auto& img = t < end ? images[t] : images[cycle_start + (t - cycle_start) % period];
            if (std::all_of(img.begin(), img.end(), [&](StateIndex x) { return s_.is_secret(x); }))
                return t;
        }
        return std::nullopt;
    }

    bool explore(unsigned depth)
    {
        if (++visited_ > q_.node_budget)
            throw resource_error("oracle exceeded its budget of " + std::to_string(q_.node_budget) +
                                 " run prefixes");
        const auto& tip = path_.back();
        if (q_.prune_revisits) {
            const unsigned remaining = q_.horizon - depth;
            auto [it, inserted] = explored_.try_emplace({tip.state, tip.estimate}, remaining);
            if (!inserted) {
                if (it->second >= remaining)
                    return false;
                it->second = remaining;
            }
        }
        if (auto t = certain_step(tip.estimate)) {
            violated_at_ = *t;
            return true;
        }
        if (depth == q_.horizon)
            return false;

        const auto x = tip.state;
        const auto image = s_.post(tip.estimate);
        for (auto u : s_.enabled_inputs(x)) {
            for (auto next : s_.successors(x, u)) {
                StateSet consistent;
                for (auto y : image)
                    if (within(s_.distance(next, y), q_.delta))
                        consistent.push_back(y);
                path_.push_back({next, u, std::move(consistent)});
                if (explore(depth + 1))
                    return true;
                path_.pop_back();
            }
        }
        return false;
    }

    const MetricSystem& s_;
    const OracleQuery& q_;
    std::vector<WitnessStep> path_;
    std::map<std::pair<StateIndex, StateSet>, unsigned> explored_;
    std::size_t visited_ = 0;
    unsigned violated_at_ = 0;
};

} // namespace

Verdict oracle_verify(const MetricSystem& s, const OracleQuery& query)
{
    if (!(query.delta >= 0.0))
        throw input_error("delta must be non-negative");
    if (query.horizon < 1)
        throw input_error("oracle horizon must be at least 1");
    return OracleSearch(s, query).run();
}

} // namespace preop
