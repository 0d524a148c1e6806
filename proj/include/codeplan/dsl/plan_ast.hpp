/*
 * Copyright 2026 The CodePlan Authors
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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace codeplan::dsl {

// Relations usable in predicates. Plans may only use the first four; the
// state flags after them appear in goal specifications.
enum class Relation {
    Close,
    Holding,
    Visible,
    Contains,
    Eaten,
    SatOn,
    Grabbed,
    Open,
    On,
};

std::string_view to_string(Relation r);
std::optional<Relation> relation_from_string(std::string_view s);
bool is_plan_relation(Relation r);

enum class PredicateForm {
    To,      // 'close' to 'bread'
    Call,    // close('bread')
    Method,  // TextInspectorTool.contains("growth driver")
};

struct Predicate {
    Relation relation = Relation::Close;
    std::string subject;
    bool negated = false;
    PredicateForm form = PredicateForm::To;
    std::string owner;  // receiver of a Method-form probe
    char quote = '\'';

    bool operator==(const Predicate&) const = default;
};

struct Literal {
    std::variant<std::string, std::int64_t> value;
    char quote = '\'';

    bool is_string() const { return std::holds_alternative<std::string>(value); }
    bool operator==(const Literal&) const = default;
};

struct VarRef {
    std::string name;
    bool operator==(const VarRef&) const = default;
};

using Operand = std::variant<Literal, VarRef>;

struct Argument {
    std::string keyword;  // empty for positional arguments
    Operand value;
    bool operator==(const Argument&) const = default;
};

// `name(args...)`. Used both as a statement and as an expression base.
struct ActionCall {
    std::string name;
    std::vector<Argument> args;
    bool operator==(const ActionCall&) const = default;
};

// One `[0]` or `['url']` step of an extraction path.
struct PathElem {
    std::variant<std::int64_t, std::string> key;
    char quote = '\'';
    bool operator==(const PathElem&) const = default;
};

struct Expr {
    std::variant<Literal, VarRef, ActionCall> base;
    std::vector<PathElem> path;
    bool operator==(const Expr&) const = default;
};

struct FlagRef {
    std::string name;
    bool negated = false;
    bool operator==(const FlagRef&) const = default;
};

struct Condition {
    std::variant<Predicate, FlagRef> test;
    bool operator==(const Condition&) const = default;
};

struct Statement;
using Block = std::vector<Statement>;

struct Comment {
    std::string text;
    bool operator==(const Comment&) const = default;
};

struct AssertRecover {
    Predicate predicate;
    Block recovery;
    bool operator==(const AssertRecover&) const = default;
};

struct Loop {
    Predicate guard;
    Block body;
    std::optional<Condition> break_when;
    bool operator==(const Loop&) const = default;
};

struct Conditional {
    Condition condition;
    Block then_block;
    Block else_block;
    bool operator==(const Conditional&) const = default;
};

struct Binding {
    std::string target;
    Expr value;
    bool operator==(const Binding&) const = default;
};

// `final_answer(expr)`
struct Return {
    Expr value;
    bool operator==(const Return&) const = default;
};

using StatementNode =
    std::variant<ActionCall, AssertRecover, Comment, Loop, Conditional, Binding, Return>;

struct Statement {
    StatementNode node;
    int line = 0;  // 1-based source line; not part of structural identity

    template <typename T>
    const T* as() const { return std::get_if<T>(&node); }
    template <typename T>
    bool is() const { return std::holds_alternative<T>(node); }

    bool operator==(const Statement& other) const { return node == other.node; }
};

struct PlanAst {
    std::string name;
    Block body;

    bool operator==(const PlanAst&) const = default;
};

bool is_identifier(std::string_view s);
bool is_plan_name(std::string_view s);

// Visits every statement in document order, descending into nested blocks.
template <typename Fn>
void walk_statements(const Block& block, Fn&& fn, int depth = 1) {
    for (const auto& st : block) {
        fn(st, depth);
        if (const auto* a = st.as<AssertRecover>()) walk_statements(a->recovery, fn, depth + 1);
        if (const auto* l = st.as<Loop>()) walk_statements(l->body, fn, depth + 1);
        if (const auto* c = st.as<Conditional>()) {
            walk_statements(c->then_block, fn, depth + 1);
            walk_statements(c->else_block, fn, depth + 1);
        }
    }
}

std::size_t count_statements(const Block& block, bool include_comments = true);

}  // namespace codeplan::dsl
