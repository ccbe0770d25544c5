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

#include "preop/expression.hpp"

#include "preop/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace preop {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(Op op, std::vector<NodePtr> args = {})
{
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->args = std::move(args);
    return n;
}

struct FunctionInfo
{
    std::string_view name;
    Op op;
    int arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"abs", Op::abs, 1}, {"cos", Op::cos, 1}, {"sin", Op::sin, 1}, {"exp", Op::exp, 1},
    {"sqrt", Op::sqrt, 1}, {"min", Op::min, 2}, {"max", Op::max, 2},
};

class Parser
{
public:
    Parser(std::string_view text, std::size_t n, std::size_t m) : text_(text), n_(n), m_(m) {}

    NodePtr parse()
    {
        auto e = expr();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos_); }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    NodePtr expr()
    {
        auto lhs = term();
        while (true) {
            if (accept('+'))
                lhs = make(Op::add, {lhs, term()});
            else if (accept('-'))
                lhs = make(Op::sub, {lhs, term()});
            else
                return lhs;
        }
    }

    NodePtr term()
    {
        auto lhs = unary();
        while (true) {
            if (accept('*'))
                lhs = make(Op::mul, {lhs, unary()});
            else if (accept('/'))
                lhs = make(Op::div, {lhs, unary()});
            else
                return lhs;
        }
    }

    NodePtr unary()
    {
        if (accept('-'))
            return make(Op::neg, {unary()});
        return primary();
    }

    NodePtr primary()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        const auto start = pos_;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc() || ptr == text_.data() + start)
            fail("malformed number");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        auto n = std::make_shared<ExprNode>();
        n->op = Op::constant;
        n->value = v;
        return n;
    }

    NodePtr identifier()
    {
        const auto start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const auto name = text_.substr(start, pos_ - start);

        if (name == "pi")
            return make(Op::pi);

        if ((name[0] == 'x' || name[0] == 'u') && name.size() > 1 &&
            std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            std::size_t idx = 0;
            std::from_chars(name.data() + 1, name.data() + name.size(), idx);
            const bool is_state = name[0] == 'x';
            const auto limit = is_state ? n_ : m_;
            if (idx < 1 || idx > limit) {
                pos_ = start;
                fail("variable '" + std::string(name) + "' out of range (dimension " + std::to_string(limit) + ")");
            }
            auto n = std::make_shared<ExprNode>();
            n->op = is_state ? Op::state_var : Op::input_var;
            n->index = idx - 1;
            return n;
        }

        auto fn = std::find_if(std::begin(kFunctions), std::end(kFunctions),
                               [&](const FunctionInfo& f) { return f.name == name; });
        if (fn == std::end(kFunctions)) {
            pos_ = start;
            fail("undefined identifier '" + std::string(name) + "'");
        }
        expect('(');
        std::vector<NodePtr> args{expr()};
        while (accept(','))
            args.push_back(expr());
        if (static_cast<int>(args.size()) != fn->arity)
            fail("function '" + std::string(name) + "' takes " + std::to_string(fn->arity) + " argument(s), got " +
                 std::to_string(args.size()));
        expect(')');
        return make(fn->op, std::move(args));
    }

    std::string_view text_;
    std::size_t n_;
    std::size_t m_;
    std::size_t pos_ = 0;
};

double eval(const ExprNode& n, std::span<const double> x, std::span<const double> u)
{
    auto arg = [&](std::size_t i) { return eval(*n.args[i], x, u); };
    switch (n.op) {
    case Op::constant:
        return n.value;
    case Op::pi:
        return std::numbers::pi;
    case Op::state_var:
        return x[n.index];
    case Op::input_var:
        return u[n.index];
    case Op::neg:
        return -arg(0);
    case Op::abs:
        return std::abs(arg(0));
    case Op::cos:
        return std::cos(arg(0));
    case Op::sin:
        return std::sin(arg(0));
    case Op::exp:
        return std::exp(arg(0));
    case Op::sqrt: {
        const double v = arg(0);
        if (v < 0.0)
            throw domain_error("sqrt of negative value " + std::to_string(v));
        return std::sqrt(v);
    }
    case Op::add:
        return arg(0) + arg(1);
    case Op::sub:
        return arg(0) - arg(1);
    case Op::mul:
        return arg(0) * arg(1);
    case Op::div: {
        const double d = arg(1);
        if (d == 0.0)
            throw domain_error("division by zero");
        return arg(0) / d;
    }
    case Op::min:
        return std::min(arg(0), arg(1));
    case Op::max:
        return std::max(arg(0), arg(1));
    }
    throw domain_error("corrupt expression node");
}

int precedence(const ExprNode& n)
{
    switch (n.op) {
    case Op::add:
    case Op::sub:
        return 1;
    case Op::mul:
    case Op::div:
        return 2;
    case Op::neg:
        return 3;
    case Op::constant:
        // A negative literal prints with a leading '-' and reads back as negation.
        return n.value < 0.0 || std::signbit(n.value) ? 3 : 4;
    default:
        return 4;
    }
}

std::string format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void print(const ExprNode& n, std::string& out)
{
    auto child = [&](const ExprNode& c, bool parens) {
        if (parens)
            out += '(';
        print(c, out);
        if (parens)
            out += ')';
    };
    const int p = precedence(n);
    switch (n.op) {
    case Op::constant:
        out += format_number(n.value);
        return;
    case Op::pi:
        out += "pi";
        return;
    case Op::state_var:
        out += "x" + std::to_string(n.index + 1);
        return;
    case Op::input_var:
        out += "u" + std::to_string(n.index + 1);
        return;
    case Op::neg:
        out += '-';
        child(*n.args[0], precedence(*n.args[0]) < p);
        return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
        static constexpr const char* kSym[] = {" + ", " - ", "*", "/"};
        const auto sym = kSym[static_cast<int>(n.op) - static_cast<int>(Op::add)];
        child(*n.args[0], precedence(*n.args[0]) < p);
        out += sym;
        child(*n.args[1], precedence(*n.args[1]) <= p);
        return;
    }
    default: {
        auto fn = std::find_if(std::begin(kFunctions), std::end(kFunctions),
                               [&](const FunctionInfo& f) { return f.op == n.op; });
        out += fn->name;
        out += '(';
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i)
                out += ", ";
            print(*n.args[i], out);
        }
        out += ')';
        return;
    }
    }
}

} // namespace

Expression::Expression(std::shared_ptr<const ExprNode> root, std::size_t state_dim, std::size_t input_dim)
    : root_(std::move(root)), state_dim_(state_dim), input_dim_(input_dim)
{
}

double Expression::evaluate(std::span<const double> x, std::span<const double> u) const
{
    if (x.size() != state_dim_ || u.size() != input_dim_)
        throw input_error("expression evaluated with state/input dimension " + std::to_string(x.size()) + "/" +
                          std::to_string(u.size()) + ", declared " + std::to_string(state_dim_) + "/" +
                          std::to_string(input_dim_));
    const double v = eval(*root_, x, u);
    if (!std::isfinite(v))
        throw domain_error("expression evaluated to a non-finite value");
    return v;
}

std::string Expression::to_string() const
{
    std::string out;
    print(*root_, out);
    return out;
}

Expression parse_expression(std::string_view text, std::size_t state_dim, std::size_t input_dim)
{
    return Expression(Parser(text, state_dim, input_dim).parse(), state_dim, input_dim);
}

} // namespace preop
