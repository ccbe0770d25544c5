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

#include "preop/verify.hpp"

#include "preop/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace preop {

StateSet backward_operator(const MetricSystem& s, const StateSet& q)
{
    std::vector<bool> in_q(s.num_states(), false);
    for (auto x : q) {
        if (x >= s.num_states())
            throw input_error("backward operator applied to an undeclared state");
        in_q[x] = true;
    }
    StateSet out;
    for (StateIndex x = 0; x < s.num_states(); ++x) {
        const auto& post = s.post(x);
        if (std::all_of(post.begin(), post.end(), [&](StateIndex y) { return in_q[y]; }))
            out.push_back(x);
    }
    return out;
}

namespace {

// T_0, T_1, ... up to (excluding) the first repeated set. From cycle_start on
// the sequence is periodic.
struct IndicatorSequence
{
    std::vector<StateSet> sets;
    unsigned cycle_start = 0;

    unsigned period() const { return static_cast<unsigned>(sets.size()) - cycle_start; }

    const StateSet& at(unsigned t) const
    {
        return t < sets.size() ? sets[t] : sets[cycle_start + (t - cycle_start) % period()];
    }
};

IndicatorSequence indicator_sequence(const MetricSystem& s)
{
    IndicatorSequence seq;
    std::map<StateSet, unsigned> seen;
    StateSet cur = s.secret_states();
    while (true) {
        auto [it, inserted] = seen.emplace(cur, static_cast<unsigned>(seq.sets.size()));
        if (!inserted) {
            seq.cycle_start = it->second;
            return seq;
        }
        seq.sets.push_back(cur);
        cur = backward_operator(s, cur);
    }
}

} // namespace

IndicatorSet indicator(const MetricSystem& s, unsigned n)
{
    return {n, indicator_sequence(s).at(n)};
}

std::vector<IndicatorSet> indicator_tail(const MetricSystem& s, unsigned k)
{
    const auto seq = indicator_sequence(s);
    const auto end = static_cast<unsigned>(seq.sets.size());
    // One full period past max(k, end) visits every value the tail can take;
    // the first occurrence of each set carries its smallest t.
    std::vector<IndicatorSet> out;
    const unsigned last = std::max(k, end) + seq.period();
    for (unsigned t = k; t < last; ++t) {
        const auto& members = seq.at(t);
        if (std::none_of(out.begin(), out.end(), [&](const IndicatorSet& u) { return u.members == members; }))
            out.push_back({t, members});
    }
    return out;
}

namespace {

std::vector<WitnessStep> witness_path(const Observer& obs, const std::vector<std::optional<std::size_t>>& parent_edge,
                                      NodeIndex target)
{
    std::vector<WitnessStep> steps;
    NodeIndex cur = target;
    while (true) {
        const auto& pe = parent_edge[cur];
        WitnessStep step{obs.node(cur).state, std::nullopt, obs.estimate_of(cur)};
        if (pe) {
            const auto& e = obs.edges()[*pe];
            step.input = e.input;
            steps.push_back(std::move(step));
            cur = e.from;
        } else {
            steps.push_back(std::move(step));
            break;
        }
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

} // namespace

Verdict verify_preopacity(const MetricSystem& s, double delta, unsigned k)
{
    if (!(delta >= 0.0))
        throw input_error("delta must be non-negative");
    return verify_preopacity(s, build_observer(s, delta), k);
}

Verdict verify_preopacity(const MetricSystem& s, const Observer& obs, unsigned k)
{
    Verdict v;
    v.delta = obs.delta();
    v.k = k;
    v.observer_nodes = obs.num_nodes();
    v.warnings = validate_system(s).warnings;

    const auto tail = indicator_tail(s, k);

    // Breadth-first order over sorted initial nodes and sorted out-edges makes
    // the first hit a shortest violating run, with ties broken by that order.
    std::vector<std::optional<std::size_t>> parent_edge(obs.num_nodes());
    std::vector<NodeIndex> order;
    {
        std::vector<bool> seen(obs.num_nodes(), false);
        std::deque<NodeIndex> work;
        for (auto n : obs.initial_nodes())
            if (!seen[n]) {
                seen[n] = true;
                work.push_back(n);
            }
        while (!work.empty()) {
            auto n = work.front();
            work.pop_front();
            order.push_back(n);
            for (auto ei : obs.out_edges(n)) {
                auto to = obs.edges()[ei].to;
                if (!seen[to]) {
                    seen[to] = true;
                    parent_edge[to] = ei;
                    work.push_back(to);
                }
            }
        }
    }

    auto search = [&](const IndicatorSet& t) -> bool {
        for (auto n : order) {
            if (is_subset(obs.estimate_of(n), t.members)) {
                v.holds = false;
                v.witness = witness_path(obs, parent_edge, n);
                v.violated_at = t.n;
                return true;
            }
        }
        return false;
    };

    // T_k decides non-blocking systems; later indicators only matter when a
    // deadlock prevents the true run from advancing to a T_k estimate.
    for (const auto& t : tail)
        if (search(t))
            break;
    return v;
}

std::string extract_witness(const Verdict& verdict, const MetricSystem& s)
{
    if (verdict.holds || !verdict.witness)
        throw input_error("verdict holds; there is no witness to extract");
    const auto t = verdict.violated_at.value_or(verdict.k);
    const auto target = indicator(s, t);

    std::ostringstream os;
    const auto& steps = *verdict.witness;
    os << "violation of " << verdict.delta << "-approximate " << verdict.k << "-step pre-opacity";
    os << " (witness length " << steps.size() - 1 << ", intruder certain of a secret state " << t
       << " step(s) ahead)\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& st = steps[i];
        os << "  step " << i << ": ";
        if (st.input)
            os << "-" << s.input_id(*st.input) << "-> ";
        os << "state " << s.state_id(st.state) << ", output [";
        const auto& y = s.output(st.state).coords;
        for (std::size_t j = 0; j < y.size(); ++j)
            os << (j ? ", " : "") << y[j];
        os << "], estimate " << format_set(s, st.estimate);
        os << (is_subset(st.estimate, target.members) ? " within" : " not within") << " T_" << t << "\n";
    }
    os << "  T_" << t << " = " << format_set(s, target.members) << "\n";
    return os.str();
}

} // namespace preop
