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

#include <cmath>
#include <sstream>

namespace preop {

namespace {

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw input_error(std::string("comparison function parameter ") + what + " must be positive and finite");
}

} // namespace

ComparisonFunction ComparisonFunction::linear(double c)
{
    require_positive(c, "c");
    return {Kind::linear, c, 1.0, 0.0};
}

ComparisonFunction ComparisonFunction::power(double c, double p)
{
    require_positive(c, "c");
    require_positive(p, "p");
    return {Kind::power, c, p, 0.0};
}

ComparisonFunction ComparisonFunction::kl_exp_linear(double c, double lambda)
{
    require_positive(c, "c");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw input_error("kl-exp-linear decay lambda must lie in (0, 1)");
    return {Kind::kl_exp_linear, c, 1.0, lambda};
}

std::string ComparisonFunction::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::linear:
        os << c_ << "*r";
        break;
    case Kind::power:
        os << c_ << "*r^" << p_;
        break;
    case Kind::kl_exp_linear:
        os << c_ << "*" << lambda_ << "^k*r";
        break;
    }
    return os.str();
}

const char* kind_name(ComparisonFunction::Kind kind)
{
    switch (kind) {
    case ComparisonFunction::Kind::linear:
        return "linear";
    case ComparisonFunction::Kind::power:
        return "power";
    case ComparisonFunction::Kind::kl_exp_linear:
        return "kl-exp-linear";
    }
    return "?";
}

ComparisonFunction::Kind parse_kind(const std::string& name)
{
    if (name == "linear")
        return ComparisonFunction::Kind::linear;
    if (name == "power")
        return ComparisonFunction::Kind::power;
    if (name == "kl-exp-linear")
        return ComparisonFunction::Kind::kl_exp_linear;
    throw input_error("unknown comparison function kind '" + name + "'");
}

double eval_kinf(const ComparisonFunction& fn, double r)
{
    if (!fn.is_class_kinf())
        throw input_error("expected a class K-infinity function, got " + std::string(kind_name(fn.kind())));
    if (r < 0.0)
        throw input_error("comparison functions are defined on r >= 0");
    return fn.kind() == ComparisonFunction::Kind::linear ? fn.c() * r : fn.c() * std::pow(r, fn.p());
}

double eval_gamma(const ComparisonFunction& fn, double r)
{
    return eval_kinf(fn, r);
}

double eval_beta(const ComparisonFunction& fn, double r, unsigned k)
{
    if (fn.kind() != ComparisonFunction::Kind::kl_exp_linear)
        throw input_error("expected a class KL function, got " + std::string(kind_name(fn.kind())));
    if (r < 0.0)
        throw input_error("comparison functions are defined on r >= 0");
    return fn.c() * std::pow(fn.lambda(), static_cast<double>(k)) * r;
}

double alpha_inverse(const ComparisonFunction& fn, double value)
{
    if (!(value > 0.0))
        throw input_error("alpha_inverse needs a positive argument");
    switch (fn.kind()) {
    case ComparisonFunction::Kind::linear:
        return value / fn.c();
    case ComparisonFunction::Kind::power:
        return std::pow(value / fn.c(), 1.0 / fn.p());
    case ComparisonFunction::Kind::kl_exp_linear:
        break;
    }
    throw input_error("alpha_inverse is only available for linear and power functions");
}

} // namespace preop
