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

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace preop {

// Grammar (lowest to highest precedence):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | primary
//   primary := number | 'pi' | xN | uN | '(' expr ')'
//            | fn1 '(' expr ')' | fn2 '(' expr ',' expr ')'
//   fn1     := abs | cos | sin | exp | sqrt
//   fn2     := min | max
//
// State variables are x1..xn and input variables u1..um (1-based).

enum class Op
{
    constant,
    pi,
    state_var,
    input_var,
    neg,
    abs,
    cos,
    sin,
    exp,
    sqrt,
    add,
    sub,
    mul,
    div,
    min,
    max,
};

struct ExprNode
{
    Op op = Op::constant;
    double value = 0.0;     // constant
    std::size_t index = 0;  // 0-based variable index
    std::vector<std::shared_ptr<const ExprNode>> args;
};

class Expression
{
public:
    Expression(std::shared_ptr<const ExprNode> root, std::size_t state_dim, std::size_t input_dim);

    std::size_t state_dim() const noexcept { return state_dim_; }
    std::size_t input_dim() const noexcept { return input_dim_; }
    const ExprNode& root() const noexcept { return *root_; }

    /// Throws input_error on dimension mismatch and domain_error on division
    /// by zero, sqrt of a negative number or a non-finite result.
    double evaluate(std::span<const double> x, std::span<const double> u) const;

    /// Minimal-parenthesis rendering that parses back to an equal tree.
    std::string to_string() const;

private:
    std::shared_ptr<const ExprNode> root_;
    std::size_t state_dim_;
    std::size_t input_dim_;
};

/// Throws parse_error (with byte offset) on syntax errors, unknown
/// identifiers, bad arity and out-of-range variable indices.
Expression parse_expression(std::string_view text, std::size_t state_dim, std::size_t input_dim);

} // namespace preop
