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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "codeplan/dsl/plan_ast.hpp"
#include "codeplan/dsl/render.hpp"
#include "codeplan/dsl/vocabulary.hpp"

namespace codeplan::replan {

enum class PromptFormat { Code, Nl };
enum class CommentMode { None, En, Cn };

std::string_view to_string(PromptFormat f);
std::string_view to_string(CommentMode m);

struct PromptOptions {
    PromptFormat format = PromptFormat::Code;
    CommentMode comments = CommentMode::En;
    bool asserts = true;
    const dsl::TranslationTable* translations = nullptr;  // used by CommentMode::Cn
};

struct TaskPrompt {
    PromptFormat format = PromptFormat::Code;
    std::string action_imports;
    std::string object_list;
    std::vector<std::string> few_shot;  // rendered example plans
    std::string header;                 // last line of the prompt, no body
    bool untranslated = false;          // some CN comment fell back to EN

    // Everything before the next-task section.
    std::string preamble() const;
    std::string text() const;
};

std::string initial_plan_name(std::string_view task);
std::string updated_plan_name(std::string_view task);

// `def <name>():` for code, `Plan <name>:` for natural language.
std::string plan_header(PromptFormat f, std::string_view plan_name);

TaskPrompt build_task_prompt(const dsl::Vocabulary& vocab, const std::vector<std::string>& objects,
                             const std::vector<dsl::PlanAst>& examples, std::string_view task_name,
                             const PromptOptions& opts);

// Replan prompt: the preamble followed by an error-feedback section whose
// last line is the next plan's header.
std::string replan_prompt(const TaskPrompt& tp, std::string_view feedback_block);

// Removes every assert(...) statement, recovery included.
dsl::PlanAst strip_assertions(const dsl::PlanAst& plan);

// Tab-separated `english<TAB>translation` lines.
dsl::TranslationTable load_translations(const std::filesystem::path& path);
dsl::TranslationTable parse_translations(std::string_view text);

}  // namespace codeplan::replan
