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

// preop: command-line front end.
//
// Exit status: 0 when the property holds, 1 when it is violated (or the
// pipeline is inconclusive, or a relation check fails), 2 on any error.

#include "preop/abstraction.hpp"
#include "preop/akp.hpp"
#include "preop/errors.hpp"
#include "preop/estimator.hpp"
#include "preop/io.hpp"
#include "preop/oracle.hpp"
#include "preop/pipeline.hpp"
#include "preop/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace preop;

constexpr int kHolds = 0;
constexpr int kViolated = 1;
constexpr int kError = 2;

// Node budget for the oracle, overridable from the environment.
constexpr const char* kBudgetVariable = "PREOP_ORACLE_BUDGET";

std::size_t oracle_budget()
{
    const char* v = std::getenv(kBudgetVariable);
    if (!v || !*v)
        return kDefaultOracleBudget;
    char* end = nullptr;
    const auto n = std::strtoull(v, &end, 10);
    if (*end != '\0' || n == 0)
        throw input_error(std::string(kBudgetVariable) + " must be a positive integer");
    return static_cast<std::size_t>(n);
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

struct VerifyArgs
{
    std::string system;
    double delta = 0.0;
    unsigned k = 0;
    std::string witness;
    std::string method = "observer";
    unsigned horizon = 0;
};

int cmd_verify(const VerifyArgs& a)
{
    const auto s = load_system(a.system);
    Verdict v;
    if (a.method == "observer") {
        v = verify_preopacity(s, a.delta, a.k);
    } else {
        OracleQuery q;
        q.delta = a.delta;
        q.k = a.k;
        q.horizon = a.horizon ? a.horizon
                              : static_cast<unsigned>(build_observer(s, a.delta).num_nodes()) + a.k;
        q.horizon = std::max(q.horizon, 1u);
        q.node_budget = oracle_budget();
        v = oracle_verify(s, q);
    }
    std::cout << verdict_to_json(v, s).dump(2) << "\n";
    if (!v.holds && !a.witness.empty())
        write_text_file(a.witness, extract_witness(v, s));
    return v.holds ? kHolds : kViolated;
}

struct AbstractArgs
{
    std::string spec;
    QuantizationParams q;
    double epsilon = 0.0;
    std::string mode = "cell";
    std::string output;
    std::string report;
    bool unsafe = false;
};

int cmd_abstract(const AbstractArgs& a)
{
    const auto spec = load_spec(a.spec);
    const auto abs = build_abstraction(spec, a.q, a.epsilon, parse_secret_mode(a.mode), a.unsafe);
    std::string report = quantization_text(abs.quantization);
    report += "states: " + std::to_string(abs.system.num_states()) +
              ", transitions: " + std::to_string(abs.system.num_transitions()) + "\n";
    report += "secret states (" + std::string(secret_mode_name(abs.mode)) +
              " mode): " + format_set(abs.system, abs.system.secret_states()) + "\n";
    for (const auto& n : abs.notes)
        report += "note: " + n + "\n";
    emit(system_to_json(abs.system).dump(2) + "\n", a.output);
    if (a.report.empty())
        std::cerr << report;
    else
        write_text_file(a.report, report);
    return kHolds;
}

struct RelateArgs
{
    std::string a;
    std::string b;
    double epsilon = 0.0;
    std::string check;
};

int cmd_relate(const RelateArgs& r)
{
    const auto sa = load_system(r.a);
    const auto sb = load_system(r.b);
    if (!r.check.empty()) {
        const auto rel = relation_from_json(parse_json(read_text_file(r.check)), sa, sb, r.epsilon);
        const auto violations = check_relation(sa, sb, r.epsilon, rel);
        json out = {{"epsilon", r.epsilon},
                    {"valid", violations.empty()},
                    {"violations", violations_to_json(violations, sa, sb)}};
        std::cout << out.dump(2) << "\n";
        return violations.empty() ? kHolds : kViolated;
    }
    const auto res = max_akp_relation(sa, sb, r.epsilon);
    std::cout << akp_result_to_json(res, sa, sb).dump(2) << "\n";
    return res.related ? kHolds : kViolated;
}

struct PipelineArgs
{
    std::string spec;
    PipelineParams p;
    std::string mode = "cell";
    std::string out;
};

int cmd_pipeline(PipelineArgs a)
{
    const auto spec = load_spec(a.spec);
    a.p.mode = parse_secret_mode(a.mode);
    PipelineReport r;
    json j;
    if (a.out.empty()) {
        const auto abs = build_abstraction(spec, a.p.quantization, a.p.epsilon, a.p.mode);
        r = summarize_pipeline(abs, a.p);
        j = pipeline_to_json(r, abs.system);
    } else {
        r = run_pipeline(spec, a.p, a.out);
        j = parse_json(read_text_file(r.files.back()));
    }
    std::cout << j.dump(2) << "\n";
    return r.status == "guaranteed" ? kHolds : kViolated;
}

struct ExportArgs
{
    std::string input;
    std::string format = "dot";
    bool observer = false;
    double delta = 0.0;
    std::string output;
};

int cmd_export(const ExportArgs& a)
{
    if (a.format != "dot")
        throw input_error("unknown export format '" + a.format + "'");
    const auto s = load_system(a.input);
    emit(a.observer ? observer_to_dot(s, build_observer(s, a.delta)) : system_to_dot(s), a.output);
    return kHolds;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Approximate pre-opacity verification for finite and abstracted control systems"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Decide delta-approximate K-step pre-opacity of a finite system");
    verify->add_option("system", va.system, "System JSON file")->required();
    verify->add_option("--delta", va.delta, "Intruder output precision")->check(CLI::NonNegativeNumber);
    verify->add_option("--k", va.k, "Prediction horizon K");
    verify->add_option("--witness", va.witness, "Write a violating run here");
    verify->add_option("--method", va.method, "observer or oracle")->check(CLI::IsMember({"observer", "oracle"}));
    verify->add_option("--horizon", va.horizon, "Oracle run length bound (default: observer size + K)");

    AbstractArgs aa;
    auto* abstract = app.add_subcommand("abstract", "Build the finite abstraction of a control system");
    abstract->add_option("spec", aa.spec, "Specification JSON file")->required();
    abstract->add_option("--eta", aa.q.eta, "State grid pitch")->required();
    abstract->add_option("--mu", aa.q.mu, "Input grid pitch (0: use the input points)");
    abstract->add_option("--theta", aa.q.theta, "Secret inflation radius")->required();
    abstract->add_option("--epsilon", aa.epsilon, "Relation precision")->required();
    abstract->add_option("--secret-mode", aa.mode, "cell or point")->check(CLI::IsMember({"cell", "point"}));
    abstract->add_option("-o,--output", aa.output, "Output system JSON (default: stdout)");
    abstract->add_option("--report", aa.report, "Construction report file (default: stderr)");
    abstract->add_flag("--unsafe", aa.unsafe, "Build even when the quantization check fails");

    RelateArgs ra;
    auto* relate = app.add_subcommand("relate", "Compute or check an AKP simulation relation");
    relate->add_option("system-a", ra.a, "Simulated system")->required();
    relate->add_option("system-b", ra.b, "Simulating system")->required();
    relate->add_option("--epsilon", ra.epsilon, "Output precision")->check(CLI::NonNegativeNumber);
    relate->add_option("--check", ra.check, "Check this relation instead of computing the maximal one");

    PipelineArgs pa;
    auto* pipeline = app.add_subcommand("pipeline", "Abstract, verify and transfer the guarantee");
    pipeline->add_option("spec", pa.spec, "Specification JSON file")->required();
    pipeline->add_option("--eta", pa.p.quantization.eta, "State grid pitch")->required();
    pipeline->add_option("--mu", pa.p.quantization.mu, "Input grid pitch");
    pipeline->add_option("--theta", pa.p.quantization.theta, "Secret inflation radius")->required();
    pipeline->add_option("--epsilon", pa.p.epsilon, "Relation precision")->required();
    pipeline->add_option("--delta", pa.p.delta, "Abstract output precision")->check(CLI::NonNegativeNumber);
    pipeline->add_option("--k", pa.p.k, "Prediction horizon K");
    pipeline->add_option("--secret-mode", pa.mode, "cell or point")->check(CLI::IsMember({"cell", "point"}));
    pipeline->add_option("--out", pa.out, "Directory for the artifacts");

    ExportArgs ea;
    auto* exp = app.add_subcommand("export", "Render a system or its observer as a graph");
    exp->add_option("system", ea.input, "System JSON file")->required();
    exp->add_option("--format", ea.format, "Graph format (dot)");
    exp->add_flag("--observer", ea.observer, "Export the current-state estimator instead");
    exp->add_option("--delta", ea.delta, "Observer precision")->check(CLI::NonNegativeNumber);
    exp->add_option("-o,--output", ea.output, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*verify)
            return cmd_verify(va);
        if (*abstract)
            return cmd_abstract(aa);
        if (*relate)
            return cmd_relate(ra);
        if (*pipeline)
            return cmd_pipeline(pa);
        if (*exp)
            return cmd_export(ea);
    } catch (const preop::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
