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

#include "preop/pipeline.hpp"

#include "preop/akp.hpp"
#include "preop/errors.hpp"

#include <filesystem>
#include <sstream>

namespace preop {

namespace {

constexpr const char* kInconclusive =
    "the abstraction is not pre-opaque at the requested precision; the transfer result only runs from the "
    "abstraction to the concrete system, so nothing is concluded about the concrete system";

} // namespace

PipelineReport summarize_pipeline(const Abstraction& abs, const PipelineParams& params)
{
    PipelineReport r;
    r.params = params;
    r.quantization = abs.quantization;
    r.num_states = abs.system.num_states();
    r.num_transitions = abs.system.num_transitions();
    r.secret_states = ids_of(abs.system, abs.system.secret_states());
    r.notes = abs.notes;
    r.abstract_verdict = verify_preopacity(abs.system, params.delta, params.k);
    if (r.abstract_verdict.holds) {
        r.status = "guaranteed";
        r.concrete_precision = transfer_verdict(params.delta, params.epsilon);
    } else {
        r.status = "inconclusive";
        r.notes.push_back(kInconclusive);
    }
    return r;
}

PipelineReport run_pipeline(const ControlSystemSpec& spec, const PipelineParams& params)
{
    return summarize_pipeline(build_abstraction(spec, params.quantization, params.epsilon, params.mode), params);
}

PipelineReport run_pipeline(const ControlSystemSpec& spec, const PipelineParams& params, const std::string& out_dir)
{
    const auto abs = build_abstraction(spec, params.quantization, params.epsilon, params.mode);
    auto r = summarize_pipeline(abs, params);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw input_error("cannot create '" + out_dir + "': " + ec.message());
    const std::filesystem::path dir(out_dir);
    const auto put = [&](const char* name, const std::string& content) {
        const auto path = (dir / name).string();
        write_text_file(path, content);
        r.files.push_back(path);
    };
    put("abstraction.json", system_to_json(abs.system).dump(2) + "\n");
    put("abstraction.dot", system_to_dot(abs.system));
    put("verdict.json", verdict_to_json(r.abstract_verdict, abs.system).dump(2) + "\n");
    r.files.push_back((dir / "report.json").string());
    write_text_file(r.files.back(), pipeline_to_json(r, abs.system).dump(2) + "\n");
    return r;
}

json pipeline_to_json(const PipelineReport& r, const MetricSystem& abstraction)
{
    json params = {{"eta", r.params.quantization.eta},
                   {"mu", r.params.quantization.mu},
                   {"theta", r.params.quantization.theta},
                   {"epsilon", r.params.epsilon},
                   {"delta", r.params.delta},
                   {"k", r.params.k},
                   {"secret_mode", secret_mode_name(r.params.mode)}};
    json summary = {{"states", r.num_states}, {"transitions", r.num_transitions}, {"secret_states", r.secret_states}};
    json j = {{"params", std::move(params)},
              {"quantization", quantization_to_json(r.quantization)},
              {"abstraction", std::move(summary)},
              {"abstract_verdict", verdict_to_json(r.abstract_verdict, abstraction)},
              {"status", r.status}};
    j["concrete_precision"] = r.concrete_precision ? json(*r.concrete_precision) : json(nullptr);
    j["notes"] = r.notes;
    j["files"] = r.files;
    return j;
}

std::string quantization_text(const QuantizationReport& r)
{
    std::ostringstream os;
    os << "alpha^-1(epsilon) = " << format_coordinate(r.alpha_inv) << "\n";
    for (const auto& c : r.checks)
        os << (c.passed ? "  pass  " : "  FAIL  ") << c.name << ": " << c.description << "\n        "
           << format_coordinate(c.lhs) << " vs " << format_coordinate(c.rhs) << "\n";
    return os.str();
}

} // namespace preop
