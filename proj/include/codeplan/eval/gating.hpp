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

#include "codeplan/eval/harness.hpp"

namespace codeplan::eval {

// True when `prompt` holds an assertion in either plan format.
bool has_assertion(std::string_view prompt, replan::PromptFormat format);

// Few-shot plans of a code-format task prompt: the `def` blocks between the
// example marker and the next-task marker.
std::vector<std::string> few_shot_blocks(std::string_view prompt);

// Checks a finished run against its ablation switches: no assertion in any
// prompt when asserts are off, one model call per task when replanning is
// off, NL prompts without plan headers, code few-shot blocks that parse.
// Needs the in-memory transcripts. Returns one line per violation.
std::vector<std::string> gating_violations(const RunReport& report);

}  // namespace codeplan::eval
