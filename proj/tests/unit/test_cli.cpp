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

#include "fixtures.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#ifndef PREOP_CLI
#error "PREOP_CLI must name the command-line binary"
#endif

using namespace preop;

namespace {

namespace fs = std::filesystem;

fs::path scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "preop_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Runs the CLI with stdout captured to a file; returns the exit status.
int run(const std::string& args, std::string* out = nullptr)
{
    const auto capture = (scratch() / "stdout.txt").string();
    const auto cmd = std::string(PREOP_CLI) + " " + args + " > " + capture + " 2> " +
                     (scratch() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    if (out)
        *out = read_text_file(capture);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fx(const std::string& name)
{
    return testing::fixture(name);
}

const std::string kScalarFlags = " --eta 1 --mu 0 --theta 2.3 --epsilon 0.4";

} // namespace

TEST_SUITE("cli")
{
TEST_CASE("verify exit codes")
{
    const auto abs_file = (scratch() / "s6.json").string();
    REQUIRE(run("abstract " + fx("scalar_spec.json") + kScalarFlags + " -o " + abs_file) == 0);
    std::string out;
    CHECK(run("verify " + abs_file + " --delta 0 --k 0", &out) == 0);
    CHECK(parse_json(out)["holds"] == true);

    const auto witness = (scratch() / "witness.txt").string();
    CHECK(run("verify " + fx("two_state_violating.json") + " --delta 0 --k 0 --witness " + witness) == 1);
    CHECK(fs::exists(witness));
    CHECK(run("verify " + fx("two_state_violating.json") + " --method oracle") == 1);
    CHECK(run("verify " + abs_file + " --method oracle --horizon 20", &out) == 0);
    CHECK(parse_json(out)["method"] == "oracle");
    CHECK(run("verify " + fx("missing.json")) == 2);
    CHECK(run("verify " + fx("scalar_spec.json")) == 2);
    CHECK(run("verify " + abs_file + " --delta -1") == 2);
    CHECK(run("bogus") == 2);
}

TEST_CASE("abstract")
{
    const auto cell = (scratch() / "cell.json").string();
    CHECK(run("abstract " + fx("scalar_spec.json") + kScalarFlags + " -o " + cell) == 0);
    const auto j = parse_json(read_text_file(cell));
    CHECK(j["states"].size() == 12);
    std::vector<std::string> secret;
    for (const auto& s : j["states"])
        if (s["secret"] == true)
            secret.push_back(s["id"]);
    CHECK(secret == std::vector<std::string>{"8", "9", "10", "11"});

    std::string out;
    CHECK(run("abstract " + fx("scalar_spec.json") + kScalarFlags + " --secret-mode point", &out) == 0);
    secret.clear();
    const auto point = parse_json(out);
    for (const auto& s : point["states"])
        if (s["secret"] == true)
            secret.push_back(s["id"]);
    CHECK(secret == std::vector<std::string>{"9", "10", "11"});

    CHECK(run("abstract " + fx("scalar_spec.json") + " --eta 1.1 --mu 0 --theta 2.3 --epsilon 0.4") == 2);
    CHECK(read_text_file((scratch() / "stderr.txt").string()).find("iss-bound") != std::string::npos);

    const auto report = (scratch() / "report.txt").string();
    CHECK(run("abstract " + fx("scalar_spec.json") + kScalarFlags + " -o " + cell + " --report " + report) == 0);
    CHECK(read_text_file(report).find("secret-inflation") != std::string::npos);
}

TEST_CASE("relate")
{
    std::string out;
    CHECK(run("relate " + fx("twin_paths.json") + " " + fx("twin_paths.json") + " --epsilon 0", &out) == 0);
    CHECK(parse_json(out)["related"] == true);
    CHECK(run("relate " + fx("akp_concrete.json") + " " + fx("akp_abstract.json") + " --epsilon 0.1 --check " +
                  fx("akp_relation.json"),
              &out) == 0);
    CHECK(parse_json(out)["violations"].empty());
    CHECK(run("relate " + fx("twin_paths.json") + " " + fx("akp_abstract.json") + " --epsilon 0.05", &out) == 1);
    CHECK(parse_json(out)["failure_reason"] == "1a");
}

TEST_CASE("pipeline")
{
    const auto dir = (scratch() / "pipe").string();
    std::string out;
    CHECK(run("pipeline " + fx("scalar_spec.json") + kScalarFlags + " --delta 0 --k 0 --out " + dir, &out) == 0);
    const auto j = parse_json(out);
    CHECK(j["status"] == "guaranteed");
    CHECK(j["concrete_precision"] == 0.8);
    CHECK(fs::exists(fs::path(dir) / "abstraction.dot"));

    std::string again;
    CHECK(run("pipeline " + fx("scalar_spec.json") + kScalarFlags + " --delta 0 --k 0", &again) == 0);
    CHECK(parse_json(again)["status"] == "guaranteed");
}

TEST_CASE("export")
{
    std::string out;
    CHECK(run("export " + fx("twin_paths.json"), &out) == 0);
    CHECK(out.rfind("digraph", 0) == 0);
    std::string twice;
    run("export " + fx("twin_paths.json"), &twice);
    CHECK(out == twice);
    CHECK(run("export " + fx("twin_paths.json") + " --observer --delta 0.2", &out) == 0);
    CHECK(out.find("A | {A, E}") != std::string::npos);
    CHECK(run("export " + fx("twin_paths.json") + " --format svg") == 2);
}
}
