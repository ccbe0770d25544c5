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

#include "preop/io.hpp"

#include "preop/errors.hpp"
#include "preop/expression.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace preop {

namespace {

void require_object(const json& j, const std::string& what, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {})
{
    if (!j.is_object())
        throw input_error(what + " must be an object");
    for (const char* key : required)
        if (!j.contains(key))
            throw input_error(what + " is missing field '" + key + "'");
    for (const auto& [key, value] : j.items()) {
        const auto known = [&](std::initializer_list<const char*> keys) {
            return std::any_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; });
        };
        if (!known(required) && !known(optional))
            throw input_error(what + " has unknown field '" + key + "'");
    }
}

const json& require_array(const json& j, const std::string& what)
{
    if (!j.is_array())
        throw input_error(what + " must be an array");
    return j;
}

std::string get_string(const json& j, const std::string& what)
{
    if (!j.is_string())
        throw input_error(what + " must be a string");
    return j.get<std::string>();
}

double get_number(const json& j, const std::string& what)
{
    if (!j.is_number())
        throw input_error(what + " must be a number");
    return j.get<double>();
}

bool get_bool(const json& j, const std::string& what)
{
    if (!j.is_boolean())
        throw input_error(what + " must be a boolean");
    return j.get<bool>();
}

std::size_t get_size(const json& j, const std::string& what)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw input_error(what + " must be a non-negative integer");
    return j.get<std::size_t>();
}

BoxUnion box_union_from_json(const json& j, const std::string& what)
{
    BoxUnion out;
    for (const auto& box : require_array(j, what)) {
        Box b;
        for (const auto& iv : require_array(box, what + " box")) {
            if (!iv.is_array() || iv.size() != 2)
                throw input_error(what + " intervals must be [lower, upper] pairs");
            b.axes.push_back({get_number(iv[0], what + " bound"), get_number(iv[1], what + " bound")});
        }
        out.boxes.push_back(std::move(b));
    }
    return out;
}

json box_union_to_json(const BoxUnion& a)
{
    json out = json::array();
    for (const auto& b : a.boxes) {
        json box = json::array();
        for (const auto& ax : b.axes)
            box.push_back({ax.lower, ax.upper});
        out.push_back(std::move(box));
    }
    return out;
}

std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

json ids_json(const MetricSystem& s, const StateSet& q)
{
    return ids_of(s, q);
}

} // namespace

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw input_error("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw input_error("failed writing '" + path + "'");
}

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("malformed JSON", e.byte);
    }
}

// ---------------------------------------------------------------------------
// Finite systems

SystemDescription system_description_from_json(const json& j)
{
    require_object(j, "system", {"states", "inputs", "transitions"});
    SystemDescription d;
    for (const auto& st : require_array(j["states"], "states")) {
        require_object(st, "state", {"id", "output", "initial", "secret"});
        const auto id = get_string(st["id"], "state id");
        OutputPoint y;
        for (const auto& c : require_array(st["output"], "output of " + id))
            y.coords.push_back(get_number(c, "output of " + id));
        d.states.push_back(id);
        if (get_bool(st["initial"], "initial flag of " + id))
            d.initial.push_back(id);
        if (get_bool(st["secret"], "secret flag of " + id))
            d.secret.push_back(id);
        d.outputs[id] = std::move(y);
    }
    for (const auto& u : require_array(j["inputs"], "inputs"))
        d.inputs.push_back(get_string(u, "input id"));
    for (const auto& t : require_array(j["transitions"], "transitions")) {
        require_object(t, "transition", {"from", "input", "to"});
        d.transitions.push_back({get_string(t["from"], "transition source"), get_string(t["input"], "transition input"),
                                 get_string(t["to"], "transition target")});
    }
    return d;
}

MetricSystem system_from_json(const json& j)
{
    return MetricSystem::compile(system_description_from_json(j));
}

MetricSystem load_system(const std::string& path)
{
    return system_from_json(parse_json(read_text_file(path)));
}

json system_to_json(const MetricSystem& s)
{
    json states = json::array();
    for (StateIndex x = 0; x < s.num_states(); ++x)
        states.push_back({{"id", s.state_id(x)},
                          {"output", s.output(x).coords},
                          {"initial", s.is_initial(x)},
                          {"secret", s.is_secret(x)}});
    json transitions = json::array();
    for (StateIndex x = 0; x < s.num_states(); ++x)
        for (InputIndex u = 0; u < s.num_inputs(); ++u)
            for (StateIndex y : s.successors(x, u))
                transitions.push_back({{"from", s.state_id(x)}, {"input", s.input_id(u)}, {"to", s.state_id(y)}});
    return {{"states", std::move(states)}, {"inputs", s.input_ids()}, {"transitions", std::move(transitions)}};
}

std::string system_to_dot(const MetricSystem& s)
{
    std::ostringstream os;
    os << "digraph system {\n  rankdir=LR;\n";
    for (StateIndex x = 0; x < s.num_states(); ++x) {
        os << "  " << dot_quote(s.state_id(x)) << " [shape=circle";
        if (s.is_secret(x))
            os << ", style=filled, fillcolor=gray70, peripheries=2";
        os << "];\n";
    }
    for (StateIndex x : s.initial_states())
        os << "  " << dot_quote("__init_" + s.state_id(x)) << " [shape=point, style=invis];\n  "
           << dot_quote("__init_" + s.state_id(x)) << " -> " << dot_quote(s.state_id(x)) << ";\n";
    for (StateIndex x = 0; x < s.num_states(); ++x)
        for (InputIndex u = 0; u < s.num_inputs(); ++u)
            for (StateIndex y : s.successors(x, u))
                os << "  " << dot_quote(s.state_id(x)) << " -> " << dot_quote(s.state_id(y))
                   << " [label=" << dot_quote(s.input_id(u)) << "];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Specifications

json comparison_to_json(const ComparisonFunction& fn)
{
    json params = {{"c", fn.c()}};
    if (fn.kind() == ComparisonFunction::Kind::power)
        params["p"] = fn.p();
    if (fn.kind() == ComparisonFunction::Kind::kl_exp_linear)
        params["lambda"] = fn.lambda();
    return {{"kind", kind_name(fn.kind())}, {"params", std::move(params)}};
}

ComparisonFunction comparison_from_json(const json& j)
{
    require_object(j, "comparison function", {"kind", "params"});
    const auto kind = parse_kind(get_string(j["kind"], "comparison function kind"));
    const auto& p = j["params"];
    switch (kind) {
    case ComparisonFunction::Kind::linear:
        require_object(p, "linear params", {"c"});
        return ComparisonFunction::linear(get_number(p["c"], "c"));
    case ComparisonFunction::Kind::power:
        require_object(p, "power params", {"c", "p"});
        return ComparisonFunction::power(get_number(p["c"], "c"), get_number(p["p"], "p"));
    case ComparisonFunction::Kind::kl_exp_linear:
        require_object(p, "kl-exp-linear params", {"c", "lambda"});
        return ComparisonFunction::kl_exp_linear(get_number(p["c"], "c"), get_number(p["lambda"], "lambda"));
    }
    throw input_error("unknown comparison function kind");
}

ControlSystemSpec spec_from_json(const json& j)
{
    require_object(j, "specification",
                   {"state_dim", "input_dim", "state_set", "secret_set", "input_set", "dynamics", "output"},
                   {"alpha", "beta", "gamma"});
    ControlSystemSpec spec;
    spec.state_dim = get_size(j["state_dim"], "state_dim");
    spec.input_dim = get_size(j["input_dim"], "input_dim");
    spec.state_set = box_union_from_json(j["state_set"], "state_set");
    spec.secret_set = box_union_from_json(j["secret_set"], "secret_set");
    spec.input_set = box_union_from_json(j["input_set"], "input_set");
    for (const auto& e : require_array(j["dynamics"], "dynamics"))
        spec.dynamics.push_back(parse_expression(get_string(e, "dynamics expression"), spec.state_dim, spec.input_dim));
    for (const auto& e : require_array(j["output"], "output"))
        spec.output.push_back(parse_expression(get_string(e, "output expression"), spec.state_dim, 0));
    if (j.contains("alpha"))
        spec.alpha = comparison_from_json(j["alpha"]);
    if (j.contains("beta"))
        spec.beta = comparison_from_json(j["beta"]);
    if (j.contains("gamma"))
        spec.gamma = comparison_from_json(j["gamma"]);
    validate_spec(spec);
    return spec;
}

ControlSystemSpec load_spec(const std::string& path)
{
    return spec_from_json(parse_json(read_text_file(path)));
}

json spec_to_json(const ControlSystemSpec& spec)
{
    json j = {{"state_dim", spec.state_dim},
              {"input_dim", spec.input_dim},
              {"state_set", box_union_to_json(spec.state_set)},
              {"secret_set", box_union_to_json(spec.secret_set)},
              {"input_set", box_union_to_json(spec.input_set)}};
    j["dynamics"] = json::array();
    for (const auto& f : spec.dynamics)
        j["dynamics"].push_back(f.to_string());
    j["output"] = json::array();
    for (const auto& h : spec.output)
        j["output"].push_back(h.to_string());
    if (spec.alpha)
        j["alpha"] = comparison_to_json(*spec.alpha);
    if (spec.beta)
        j["beta"] = comparison_to_json(*spec.beta);
    if (spec.gamma)
        j["gamma"] = comparison_to_json(*spec.gamma);
    return j;
}

// ---------------------------------------------------------------------------
// Results

json verdict_to_json(const Verdict& v, const MetricSystem& s)
{
    json j = {{"holds", v.holds},
              {"delta", v.delta},
              {"k", v.k},
              {"observer_nodes", v.observer_nodes},
              {"method", v.method}};
    if (v.witness) {
        json w = json::array();
        for (const auto& step : *v.witness) {
            json e = {{"state", s.state_id(step.state)}};
            if (step.input)
                e["input"] = s.input_id(*step.input);
            e["estimate"] = ids_json(s, step.estimate);
            w.push_back(std::move(e));
        }
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["violated_at"] = v.violated_at ? json(*v.violated_at) : json(nullptr);
    j["warnings"] = v.warnings;
    return j;
}

RelationPairs relation_from_json(const json& j, const MetricSystem& sa, const MetricSystem& sb, double epsilon)
{
    std::vector<std::pair<std::string, std::string>> ids;
    for (const auto& p : require_array(j, "relation")) {
        require_object(p, "relation pair", {"a", "b"});
        ids.emplace_back(get_string(p["a"], "relation state"), get_string(p["b"], "relation state"));
    }
    return relation_from_ids(sa, sb, ids, epsilon);
}

json relation_to_json(const RelationPairs& r, const MetricSystem& sa, const MetricSystem& sb)
{
    json out = json::array();
    for (const auto& [a, b] : r.pairs)
        out.push_back({{"a", sa.state_id(a)}, {"b", sb.state_id(b)}});
    return out;
}

json akp_result_to_json(const AkpResult& r, const MetricSystem& sa, const MetricSystem& sb)
{
    json j = {{"related", r.related}, {"epsilon", r.relation.epsilon}};
    j["failure_reason"] = r.failure_reason() ? json(*r.failure_reason()) : json(nullptr);
    j["failed_conditions"] = r.failed_conditions;
    j["relation"] = relation_to_json(r.relation, sa, sb);
    return j;
}

json violations_to_json(const std::vector<RelationViolation>& v, const MetricSystem& sa, const MetricSystem& sb)
{
    json out = json::array();
    for (const auto& x : v) {
        json e = {{"condition", x.condition}};
        e["a"] = x.a ? json(sa.state_id(*x.a)) : json(nullptr);
        e["b"] = x.b ? json(sb.state_id(*x.b)) : json(nullptr);
        e["detail"] = x.detail;
        out.push_back(std::move(e));
    }
    return out;
}

json quantization_to_json(const QuantizationReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"description", c.description},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"passed", c.passed}});
    return {{"alpha_inverse", r.alpha_inv}, {"passed", r.passed()}, {"checks", std::move(checks)}};
}

} // namespace preop
