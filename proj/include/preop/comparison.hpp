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

#include <string>

namespace preop {

/// Closed-form comparison functions.
///
///   linear         r      -> c * r              (class K-infinity)
///   power          r      -> c * r^p, p > 0     (class K-infinity)
///   kl_exp_linear  (r, k) -> c * lambda^k * r   (class KL, 0 < lambda < 1)
///
/// The first two play the roles of alpha and gamma, the last one of beta.
class ComparisonFunction
{
public:
    enum class Kind
    {
        linear,
        power,
        kl_exp_linear,
    };

    /// Factories throw input_error on non-positive or out-of-range parameters.
    static ComparisonFunction linear(double c);
    static ComparisonFunction power(double c, double p);
    static ComparisonFunction kl_exp_linear(double c, double lambda);

    Kind kind() const noexcept { return kind_; }
    double c() const noexcept { return c_; }
    double p() const noexcept { return p_; }
    double lambda() const noexcept { return lambda_; }

    bool is_class_kinf() const noexcept { return kind_ != Kind::kl_exp_linear; }

    std::string describe() const;

private:
    ComparisonFunction(Kind kind, double c, double p, double lambda) : kind_(kind), c_(c), p_(p), lambda_(lambda) {}

    Kind kind_;
    double c_;
    double p_;
    double lambda_;
};

const char* kind_name(ComparisonFunction::Kind kind);
/// Throws input_error for unknown names.
ComparisonFunction::Kind parse_kind(const std::string& name);

/// Value of a class K-infinity function at r >= 0. Throws input_error for a
/// KL function or negative r.
double eval_kinf(const ComparisonFunction& fn, double r);
double eval_gamma(const ComparisonFunction& fn, double r);

/// Value of a KL function at (r, k). Throws input_error for other kinds.
double eval_beta(const ComparisonFunction& fn, double r, unsigned k);

/// The r >= 0 with fn(r) = value, exact for linear and power kinds. Throws
/// input_error for KL functions or a non-positive value.
double alpha_inverse(const ComparisonFunction& fn, double value);

} // namespace preop
