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

#include <stdexcept>
#include <string>
#include <string_view>

#include "codeplan/dsl/plan_ast.hpp"

namespace codeplan::dsl {

enum class ParseErrorKind {
    BadHeader,
    BadIndent,
    UnknownConstruct,
    DanglingElse,
    EmptyBody,
};

std::string_view to_string(ParseErrorKind k);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, int line, std::string detail);

    ParseErrorKind kind() const noexcept { return kind_; }
    int line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ParseErrorKind kind_;
    int line_;
    std::string detail_;
};

// Deepest indentation level a plan line may sit at (body statements are level 1).
inline constexpr int kMaxNestingDepth = 4;

// Parses a single `def name():` plan. Indentation may use 2 or 4 spaces per
// level (fixed by the first body line). Lines inside open parentheses are
// joined. Throws ParseError.
PlanAst parse_plan(std::string_view source);

// Parses text that is either a complete plan or a bare body; when the first
// non-blank line is not a `def` header, `header` is prepended.
PlanAst parse_completion(std::string_view completion, std::string_view header);

// Parses the predicate syntax accepted in plans and goal files, e.g.
// `'close' to 'bread'`, `eaten('bread')`, `not holding(cup)`.
Predicate parse_predicate(std::string_view text, bool allow_state_flags = false);

}  // namespace codeplan::dsl
