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

#include <string>
#include <string_view>
#include <vector>

#include "codeplan/dsl/plan_ast.hpp"
#include "codeplan/dsl/vocabulary.hpp"

namespace codeplan::dsl {

enum class ViolationKind {
    UnknownAction,
    ArityMismatch,
    ArgumentKind,
    UndeclaredObject,
    UnboundVariable,
};

std::string_view to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    int line = 0;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::size_t count(ViolationKind k) const;
    std::string summary() const;
};

// Loop-guard sentinels that are always bound.
inline constexpr std::string_view kLoopBudgetFlag = "too_many_pages_scrolled";

// Checks every call, predicate and variable reference against `vocab`.
// Bindings made anywhere earlier in document order are in scope.
ValidationReport validate_plan(const PlanAst& plan, const Vocabulary& vocab);

}  // namespace codeplan::dsl
