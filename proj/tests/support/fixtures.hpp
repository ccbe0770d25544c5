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

#include <string>

#ifndef PREOP_FIXTURE_DIR
#error "PREOP_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace preop::testing {

inline std::string fixture(const std::string& name)
{
    return std::string(PREOP_FIXTURE_DIR) + "/" + name;
}

inline MetricSystem load_fixture(const std::string& name)
{
    return load_system(fixture(name));
}

inline ControlSystemSpec scalar_spec()
{
    return load_spec(fixture("scalar_spec.json"));
}

inline constexpr QuantizationParams kScalarParams{1.0, 0.0, 2.3};
inline constexpr double kScalarEpsilon = 0.4;

inline Abstraction scalar_abstraction(SecretMode mode = SecretMode::cell)
{
    return build_abstraction(scalar_spec(), kScalarParams, kScalarEpsilon, mode);
}

} // namespace preop::testing
