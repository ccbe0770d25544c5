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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace preop {

/// Base class of every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (files, identifiers, parameters).
class input_error : public error
{
public:
    using error::error;
};

/// A computation was aborted because it exceeded its configured budget.
class resource_error : public error
{
public:
    using error::error;
};

/// A numeric domain violation during expression evaluation.
class domain_error : public error
{
public:
    using error::error;
};

class parse_error : public input_error
{
public:
    parse_error(const std::string& what, std::size_t offset)
        : input_error(what + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace preop
