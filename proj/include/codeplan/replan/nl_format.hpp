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
#include "codeplan/dsl/render.hpp"
#include "codeplan/exec/error_trace.hpp"

namespace codeplan::replan {

// The sentence-per-line rendering used by the natural-language ablation.
// Only comments, action calls with identifier arguments, and assertions
// whose recovery is a list of such calls can be expressed.
class NlUnsupported : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string render_plan_nl(const dsl::PlanAst& plan, const dsl::CommentStyle& style = dsl::CommentStyle::keep());

// Inverse of render_plan_nl. Throws dsl::ParseError.
dsl::PlanAst parse_plan_nl(std::string_view text);

// Completion that may omit the `Plan <name>:` line.
dsl::PlanAst parse_nl_completion(std::string_view completion, std::string_view header);

// `perform the action sit on the object sofa`
std::string describe_call_nl(const dsl::ActionCall& call);

std::string serialize_error_trace_nl(const exec::ErrorTrace& t, std::string_view next_plan_name);

}  // namespace codeplan::replan
