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

#include "preop/akp.hpp"

#include "preop/errors.hpp"

#include <algorithm>
#include <deque>

namespace preop {

namespace {

void require_epsilon(double epsilon)
{
    if (!(epsilon >= 0.0))
        throw input_error("epsilon must be non-negative");
}

void require_compatible(const MetricSystem& sa, const MetricSystem& sb)
{
    if (sa.output_dim() != sb.output_dim())
        throw input_error("systems have different output dimensions (" + std::to_string(sa.output_dim()) +
                          " vs " + std::to_string(sb.output_dim()) + ")");
}

/// Dense membership matrix over X_a × X_b.
class PairMatrix
{
public:
    PairMatrix(std::size_t na, std::size_t nb) : nb_(nb), bits_(na * nb, false) {}

    bool get(StateIndex a, StateIndex b) const { return bits_[a * nb_ + b]; }
    void set(StateIndex a, StateIndex b, bool v) { bits_[a * nb_ + b] = v; }

private:
    std::size_t nb_;
    std::vector<bool> bits_;
};

PairMatrix to_matrix(const MetricSystem& sa, const MetricSystem& sb, const RelationPairs& r)
{
    PairMatrix m(sa.num_states(), sb.num_states());
    for (auto [a, b] : r.pairs) {
        if (a >= sa.num_states() || b >= sb.num_states())
            throw input_error("relation pair refers to an undeclared state");
        m.set(a, b, true);
    }
    return m;
}

// Which of 3a/3b/3c the pair (a, b) violates with respect to rel. The
// returned strings describe the first unmatched move per condition.
struct StepCheck
{
    std::optional<std::string> c3a, c3b, c3c;

    bool ok() const { return !c3a && !c3b && !c3c; }
};

StepCheck check_step(const MetricSystem& sa, const MetricSystem& sb, const PairMatrix& rel, StateIndex a,
                     StateIndex b, bool stop_early)
{
    StepCheck out;
    const auto& post_a = sa.post(a);
    const auto& post_b = sb.post(b);
    for (auto a2 : post_a) {
        if (std::none_of(post_b.begin(), post_b.end(), [&](StateIndex b2) { return rel.get(a2, b2); })) {
            out.c3a = "move " + sa.state_id(a) + " -> " + sa.state_id(a2) + " has no related answer from " +
                      sb.state_id(b);
            if (stop_early)
                return out;
            break;
        }
    }
    for (auto b2 : post_b) {
        if (!out.c3b &&
            std::none_of(post_a.begin(), post_a.end(), [&](StateIndex a2) { return rel.get(a2, b2); })) {
            out.c3b = "move " + sb.state_id(b) + " -> " + sb.state_id(b2) + " has no related answer from " +
                      sa.state_id(a);
            if (stop_early)
                return out;
        }
        if (!out.c3c && !sb.is_secret(b2) && std::none_of(post_a.begin(), post_a.end(), [&](StateIndex a2) {
                return !sa.is_secret(a2) && rel.get(a2, b2);
            })) {
            out.c3c = "non-secret move " + sb.state_id(b) + " -> " + sb.state_id(b2) +
                      " has no related non-secret answer from " + sa.state_id(a);
            if (stop_early)
                return out;
        }
    }
    return out;
}

} // namespace

bool RelationPairs::contains(StateIndex a, StateIndex b) const
{
    return std::binary_search(pairs.begin(), pairs.end(), StatePair{a, b});
}

RelationPairs candidate_relation(const MetricSystem& sa, const MetricSystem& sb, double epsilon)
{
    require_epsilon(epsilon);
    require_compatible(sa, sb);
    RelationPairs r;
    r.epsilon = epsilon;
    for (StateIndex a = 0; a < sa.num_states(); ++a)
        for (StateIndex b = 0; b < sb.num_states(); ++b)
            if (within(output_distance(sa.output(a), sb.output(b)), epsilon))
                r.pairs.emplace_back(a, b);
    return r;
}

AkpResult max_akp_relation(const MetricSystem& sa, const MetricSystem& sb, double epsilon)
{
    const auto candidate = candidate_relation(sa, sb, epsilon);
    PairMatrix rel = to_matrix(sa, sb, candidate);
    PairMatrix queued(sa.num_states(), sb.num_states());

    std::deque<StatePair> work(candidate.pairs.begin(), candidate.pairs.end());
    for (auto [a, b] : candidate.pairs)
        queued.set(a, b, true);

    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        queued.set(a, b, false);
        if (!rel.get(a, b) || check_step(sa, sb, rel, a, b, true).ok())
            continue;
        rel.set(a, b, false);
        // Only pairs that can move into (a, b) may lose their justification.
        for (auto pa : sa.pre(a))
            for (auto pb : sb.pre(b))
                if (rel.get(pa, pb) && !queued.get(pa, pb)) {
                    queued.set(pa, pb, true);
                    work.emplace_back(pa, pb);
                }
    }

    AkpResult result;
    result.relation.epsilon = epsilon;
    for (auto [a, b] : candidate.pairs)
        if (rel.get(a, b))
            result.relation.pairs.emplace_back(a, b);

    const auto& init_a = sa.initial_states();
    const auto& init_b = sb.initial_states();
    auto related_to_some = [&](StateIndex a) {
        return std::any_of(init_b.begin(), init_b.end(), [&](StateIndex b) { return rel.get(a, b); });
    };
    auto related_from_some = [&](StateIndex b) {
        return std::any_of(init_a.begin(), init_a.end(), [&](StateIndex a) { return rel.get(a, b); });
    };
    if (!std::all_of(init_a.begin(), init_a.end(), related_to_some))
        result.failed_conditions.push_back("1a");
    if (!std::all_of(init_b.begin(), init_b.end(), related_from_some))
        result.failed_conditions.push_back("1b");
    result.related = result.failed_conditions.empty();
    return result;
}

std::vector<RelationViolation> check_relation(const MetricSystem& sa, const MetricSystem& sb, double epsilon,
                                              const RelationPairs& relation)
{
    require_epsilon(epsilon);
    require_compatible(sa, sb);
    const PairMatrix rel = to_matrix(sa, sb, relation);
    std::vector<RelationViolation> out;

    for (auto a : sa.initial_states()) {
        const auto& init_b = sb.initial_states();
        if (std::none_of(init_b.begin(), init_b.end(), [&](StateIndex b) { return rel.get(a, b); }))
            out.push_back({"1a", a, std::nullopt,
                           "initial state " + sa.state_id(a) + " is unrelated to every initial state of S_b"});
    }
    for (auto b : sb.initial_states()) {
        const auto& init_a = sa.initial_states();
        if (std::none_of(init_a.begin(), init_a.end(), [&](StateIndex a) { return rel.get(a, b); }))
            out.push_back({"1b", std::nullopt, b,
                           "initial state " + sb.state_id(b) + " is unrelated to every initial state of S_a"});
    }

    auto pairs = relation.pairs;
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (auto [a, b] : pairs) {
        const double d = output_distance(sa.output(a), sb.output(b));
        if (!within(d, epsilon))
            out.push_back({"2", a, b, "output distance " + std::to_string(d) + " exceeds epsilon"});
        auto step = check_step(sa, sb, rel, a, b, false);
        if (step.c3a)
            out.push_back({"3a", a, b, *step.c3a});
        if (step.c3b)
            out.push_back({"3b", a, b, *step.c3b});
        if (step.c3c)
            out.push_back({"3c", a, b, *step.c3c});
    }
    return out;
}

bool satisfies_step_conditions(const MetricSystem& sa, const MetricSystem& sb, double epsilon,
                               const RelationPairs& relation)
{
    const PairMatrix rel = to_matrix(sa, sb, relation);
    for (auto [a, b] : relation.pairs) {
        if (!within(output_distance(sa.output(a), sb.output(b)), epsilon))
            return false;
        if (!check_step(sa, sb, rel, a, b, true).ok())
            return false;
    }
    return true;
}

double transfer_verdict(double delta_b, double epsilon)
{
    if (!(delta_b >= 0.0) || !(epsilon >= 0.0))
        throw input_error("transfer_verdict needs non-negative delta and epsilon");
    return delta_b + 2.0 * epsilon;
}

RelationPairs relation_from_ids(const MetricSystem& sa, const MetricSystem& sb,
                                const std::vector<std::pair<std::string, std::string>>& ids, double epsilon)
{
    RelationPairs r;
    r.epsilon = epsilon;
    for (const auto& [a, b] : ids)
        r.pairs.emplace_back(sa.state_index(a), sb.state_index(b));
    std::sort(r.pairs.begin(), r.pairs.end());
    r.pairs.erase(std::unique(r.pairs.begin(), r.pairs.end()), r.pairs.end());
    return r;
}

} // namespace preop
