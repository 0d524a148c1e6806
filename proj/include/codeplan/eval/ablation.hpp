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
#include <vector>

#include <json.hpp>

#include "codeplan/replan/task_prompt.hpp"

namespace codeplan::eval {

struct AblationConfig {
    std::string name;
    replan::PromptFormat format = replan::PromptFormat::Code;
    replan::CommentMode comments = replan::CommentMode::En;
    bool assert_enabled = true;
    bool replan_enabled = true;
    std::vector<unsigned> seeds;  // seed of repeat r is seeds[r % size], or r when empty
    std::size_t repeats = 1;

    bool operator==(const AblationConfig&) const = default;
    unsigned seed_for(std::size_t repeat) const;
};

class AblationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws AblationError on repeats = 0, or CN comments with the NL format
// (NL plans carry notes, not comment lines to translate).
void check_ablation(const AblationConfig& cfg);

// The eleven rows of the household ablation, in table order.
const std::vector<AblationConfig>& ablation_presets();
const AblationConfig& ablation_preset(std::size_t row);  // 1-based; throws std::out_of_range

nlohmann::ordered_json to_json(const AblationConfig& cfg);
// Keys: name, format (nl|code), comments (none|en|cn), assert, replan,
// seeds, repeats, or `preset` naming a table row (1-11) whose fields the
// other keys then override.
AblationConfig parse_ablation(const nlohmann::ordered_json& v);

replan::PromptOptions prompt_options(const AblationConfig& cfg, const dsl::TranslationTable* translations);

}  // namespace codeplan::eval
