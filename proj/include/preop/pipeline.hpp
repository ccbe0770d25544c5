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
#include "preop/io.hpp"
#include "preop/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace preop {

struct PipelineParams
{
    QuantizationParams quantization;
    double epsilon = 0.0;
    double delta = 0.0;
    unsigned k = 0;
    SecretMode mode = SecretMode::cell;
};

struct PipelineReport
{
    PipelineParams params;
    QuantizationReport quantization;
    std::size_t num_states = 0;
    std::size_t num_transitions = 0;
    std::vector<std::string> secret_states;
    std::vector<std::string> notes;
    Verdict abstract_verdict;
    /// "guaranteed" or "inconclusive".
    std::string status;
    /// delta + 2 epsilon; present only when status is "guaranteed".
    std::optional<double> concrete_precision;
    std::vector<std::string> files;
};

/// Abstracts the specification, verifies the abstraction at (delta, k) and,
/// when it holds, reports the concrete precision delta + 2 epsilon. A failing
/// abstract verdict makes the outcome "inconclusive". Throws like
/// build_abstraction.
PipelineReport run_pipeline(const ControlSystemSpec& spec, const PipelineParams& params);

/// The verification and transfer half of run_pipeline on a built abstraction.
PipelineReport summarize_pipeline(const Abstraction& abs, const PipelineParams& params);

/// Same, and writes abstraction.json, abstraction.dot, verdict.json and
/// report.json under out_dir (created if missing).
PipelineReport run_pipeline(const ControlSystemSpec& spec, const PipelineParams& params, const std::string& out_dir);

json pipeline_to_json(const PipelineReport& r, const MetricSystem& abstraction);

/// Plain-text construction report: both quantization inequalities and notes.
std::string quantization_text(const QuantizationReport& r);

} // namespace preop
