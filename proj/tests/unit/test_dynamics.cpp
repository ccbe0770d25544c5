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

#include "preop/comparison.hpp"
#include "preop/errors.hpp"
#include "preop/expression.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace preop;

namespace {

double eval1(const std::string& text, double x, double u = 0.0)
{
    const double xs[] = {x};
    const double us[] = {u};
    return parse_expression(text, 1, 1).evaluate(xs, us);
}

std::size_t error_offset(const std::string& text)
{
    try {
        parse_expression(text, 1, 1);
    } catch (const parse_error& e) {
        return e.offset();
    }
    return std::string::npos;
}

} // namespace

TEST_SUITE("dynamics")
{
TEST_CASE("parse and evaluate")
{
    CHECK(eval1("0.2*x1+u1", 11.0, 0.05) == doctest::Approx(2.25).epsilon(1e-15));
    CHECK(eval1("0.2*x1 + u1", 0.0625, 0.05) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(std::abs(eval1("abs(cos(0.1*pi*x1))", 5.0)) < 1e-12);
    CHECK(eval1("abs(cos(0.1*pi*x1))", 0.0) == 1.0);
    CHECK(eval1("1 + 2*3", 0) == 7.0);
    CHECK(eval1("(1 + 2)*3", 0) == 9.0);
    CHECK(eval1("8/4/2", 0) == 1.0);
    CHECK(eval1("1 - 2 - 3", 0) == -4.0);
    CHECK(eval1("--x1", 3) == 3.0);
    CHECK(eval1("-x1*2", 3) == -6.0);
    CHECK(eval1("min(x1, u1) + max(x1, u1)", 2, 5) == 7.0);
    CHECK(eval1("sqrt(x1) + exp(0) + sin(0)", 4) == 3.0);
}

TEST_CASE("parse errors")
{
    CHECK(error_offset("0.2**") == 4);
    CHECK(error_offset("foo(x1)") == 0);
    CHECK(error_offset("x2") == 0);
    CHECK(error_offset("u0") == 0);
    CHECK(error_offset("min(x1)") != std::string::npos);
    CHECK(error_offset("(x1") != std::string::npos);
    CHECK(error_offset("x1 x1") == 3);
    CHECK(error_offset("") == 0);
    CHECK_THROWS_AS(parse_expression("u1", 1, 0), parse_error);
}

TEST_CASE("evaluation errors")
{
    CHECK_THROWS_AS(eval1("1/(x1-1)", 1), domain_error);
    CHECK_THROWS_AS(eval1("sqrt(x1)", -1), domain_error);
    CHECK_THROWS_AS(eval1("exp(x1)", 1000), domain_error);
    const auto e = parse_expression("x1", 1, 0);
    const double two[] = {1.0, 2.0};
    CHECK_THROWS_AS(e.evaluate(two, {}), input_error);
}

TEST_CASE("pretty printing is idempotent and faithful")
{
    const char* samples[] = {"0.2*x1 + u1",     "abs(cos(0.1*pi*x1))", "x1 - (x2 - u1)", "-(x1 + x2)*3",
                             "x1/(x2*u1)",      "min(x1, -2)/4",       "--x1 - -x2",     "1 - -0.5*x2",
                             "(x1*x2)*(u1/x2)", "x1 - x2 + u1 - 1"};
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(0.5, 3.0);
    for (const char* text : samples) {
        const auto e = parse_expression(text, 2, 1);
        const auto once = e.to_string();
        const auto again = parse_expression(once, 2, 1);
        CHECK(again.to_string() == once);
        for (int i = 0; i < 20; ++i) {
            const double x[] = {d(rng), d(rng)};
            const double u[] = {d(rng)};
            CHECK(again.evaluate(x, u) == e.evaluate(x, u));
        }
    }
}

TEST_CASE("comparison functions")
{
    const auto lin = ComparisonFunction::linear(0.1 * std::numbers::pi);
    CHECK(alpha_inverse(lin, 0.4) == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(alpha_inverse(ComparisonFunction::linear(1.0), 0.4) == 0.4);
    CHECK(alpha_inverse(ComparisonFunction::power(1.0, 2.0), 4.0) == doctest::Approx(2.0));

    const auto beta = ComparisonFunction::kl_exp_linear(1.0, 0.2);
    CHECK(eval_beta(beta, 1.2732, 1) == doctest::Approx(0.25464));
    CHECK(eval_beta(beta, 3.0, 0) == 3.0);
    CHECK(eval_gamma(ComparisonFunction::linear(2.0), 0.0) == 0.0);

    CHECK_THROWS_AS(eval_beta(lin, 1.0, 1), input_error);
    CHECK_THROWS_AS(eval_gamma(beta, 1.0), input_error);
    CHECK_THROWS_AS(alpha_inverse(beta, 1.0), input_error);
    CHECK_THROWS_AS(ComparisonFunction::linear(0.0), input_error);
    CHECK_THROWS_AS(ComparisonFunction::power(1.0, -1.0), input_error);
    CHECK_THROWS_AS(ComparisonFunction::kl_exp_linear(1.0, 1.0), input_error);
    CHECK(parse_kind("kl-exp-linear") == ComparisonFunction::Kind::kl_exp_linear);
    CHECK_THROWS_AS(parse_kind("cubic"), input_error);
}

TEST_CASE("alpha inverse is an inverse and classes hold on samples")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> pos(0.05, 5.0);
    for (int i = 0; i < 200; ++i) {
        const auto fn = i % 2 ? ComparisonFunction::linear(pos(rng)) : ComparisonFunction::power(pos(rng), pos(rng));
        const double eps = pos(rng);
        CHECK(std::abs(eval_kinf(fn, alpha_inverse(fn, eps)) - eps) <= 1e-9);
        CHECK(eval_kinf(fn, 0.0) == 0.0);
        const double r = pos(rng);
        CHECK(eval_kinf(fn, r) < eval_kinf(fn, r * 1.01));

        const auto kl = ComparisonFunction::kl_exp_linear(pos(rng), std::uniform_real_distribution<double>(0.01, 0.99)(rng));
        for (unsigned k = 0; k < 5; ++k) {
            CHECK(eval_beta(kl, r, k) > eval_beta(kl, r, k + 1));
            CHECK(eval_beta(kl, r, k) < eval_beta(kl, r * 1.01, k));
        }
    }
}
}
