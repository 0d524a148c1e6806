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

#include <map>
#include <stdexcept>
#include <string>

#include "codeplan/dsl/plan_ast.hpp"

namespace codeplan::dsl {

using TranslationTable = std::map<std::string, std::string, std::less<>>;

struct CommentStyle {
    enum class Mode { Keep, Strip, Translate };
    Mode mode = Mode::Keep;
    const TranslationTable* table = nullptr;  // required for Translate

    static CommentStyle keep() { return {}; }
    static CommentStyle strip() { return {Mode::Strip, nullptr}; }
    static CommentStyle translate(const TranslationTable& t) { return {Mode::Translate, &t}; }
};

class MissingTranslation : public std::runtime_error {
public:
    explicit MissingTranslation(std::string comment)
        : std::runtime_error("no translation for comment: " + comment),
          comment_(std::move(comment)) {}
    const std::string& comment() const noexcept { return comment_; }

private:
    std::string comment_;
};

inline constexpr int kIndentWidth = 4;

std::string render_plan(const PlanAst& plan, const CommentStyle& style = CommentStyle::keep());
std::string render_block(const Block& block, int level,
                         const CommentStyle& style = CommentStyle::keep());

// Single-line renderings, without indentation.
std::string render_statement_head(const Statement& st);
std::string render_call(const ActionCall& call);
std::string render_expr(const Expr& e);
std::string render_operand(const Operand& o);
std::string render_predicate(const Predicate& p);
std::string render_condition(const Condition& c);

}  // namespace codeplan::dsl
