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

#include "preop/abstraction.hpp"
#include "preop/akp.hpp"
#include "preop/system.hpp"
#include "preop/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace preop {

using json = nlohmann::ordered_json;

// File helpers. Both throw input_error on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Parses JSON text. Throws parse_error carrying the byte offset.
json parse_json(const std::string& text);

// Finite systems:
//   {"states": [{"id", "output": [..], "initial", "secret"}, ...],
//    "inputs": [ids], "transitions": [{"from", "input", "to"}, ...]}
// Every field is required and unknown fields are rejected.
SystemDescription system_description_from_json(const json& j);
/// Throws input_error listing every validation error.
MetricSystem system_from_json(const json& j);
MetricSystem load_system(const std::string& path);
json system_to_json(const MetricSystem& s);
/// Deterministic DOT rendering; secret states are filled, initial states
/// get an incoming arrow from an invisible point.
std::string system_to_dot(const MetricSystem& s);

// Continuous specifications:
//   {"state_dim", "input_dim", "state_set", "secret_set", "input_set",
//    "dynamics": [exprs], "output": [exprs], "alpha", "beta", "gamma"}
// Sets are arrays of boxes, a box an array of [lo, hi] intervals. Comparison
// functions are {"kind": ..., "params": {"c", "p" | "lambda"}}; alpha, beta
// and gamma are optional.
ControlSystemSpec spec_from_json(const json& j);
ControlSystemSpec load_spec(const std::string& path);
json spec_to_json(const ControlSystemSpec& spec);

json comparison_to_json(const ComparisonFunction& fn);
ComparisonFunction comparison_from_json(const json& j);

json verdict_to_json(const Verdict& v, const MetricSystem& s);

/// [{"a": id, "b": id}, ...]
RelationPairs relation_from_json(const json& j, const MetricSystem& sa, const MetricSystem& sb, double epsilon);
json relation_to_json(const RelationPairs& r, const MetricSystem& sa, const MetricSystem& sb);
json akp_result_to_json(const AkpResult& r, const MetricSystem& sa, const MetricSystem& sb);
json violations_to_json(const std::vector<RelationViolation>& v, const MetricSystem& sa, const MetricSystem& sb);

json quantization_to_json(const QuantizationReport& r);

} // namespace preop
