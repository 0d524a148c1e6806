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

#include "codeplan/eval/gating.hpp"

#include <algorithm>
#include <regex>

#include "codeplan/dsl/parser.hpp"

namespace codeplan::eval {

bool has_assertion(std::string_view prompt, replan::PromptFormat format) {
    if (format == replan::PromptFormat::Nl) return prompt.find("Check that") != std::string_view::npos;
    static const std::regex word(R"(\bassert\b)");
    return std::regex_search(prompt.begin(), prompt.end(), word);
}

std::vector<std::string> few_shot_blocks(std::string_view prompt) {
    constexpr std::string_view start = "# Example tasks\n";
    constexpr std::string_view stops[] = {"\n# Next Task\n", "\n# Error Feedback\n"};
    std::vector<std::string> out;
    auto a = prompt.find(start);
    if (a == std::string_view::npos) return out;
    a += start.size();
    auto b = std::string_view::npos;
    for (auto stop : stops) b = std::min(b, prompt.find(stop, a));
    std::string_view body = prompt.substr(a, b == std::string_view::npos ? std::string_view::npos : b - a);
    std::size_t pos = 0;
    while (pos < body.size()) {
        auto nl = body.find('\n', pos);
        if (nl == std::string_view::npos) nl = body.size();
        std::string_view line = body.substr(pos, nl - pos);
        if (line.rfind("def ", 0) == 0) out.emplace_back();
        if (!out.empty()) out.back().append(line).append("\n");
        pos = nl + 1;
    }
    return out;
}

std::vector<std::string> gating_violations(const RunReport& report) {
    std::vector<std::string> out;
    const auto& cfg = report.config;
    for (const auto& rec : report.records) {
        const std::string who = rec.episode_id.empty() ? rec.task_id : rec.episode_id;
        if (rec.infra_error) {
            out.push_back(who + ": infrastructure error: " + *rec.infra_error);
            continue;
        }
        if (!cfg.replan_enabled && rec.model_calls != 1) {
            out.push_back(who + ": " + std::to_string(rec.model_calls) + " model calls with replanning off");
        }
        if (rec.transcript.size() != rec.model_calls) out.push_back(who + ": transcript not kept");
        const bool embodied = rec.kind == replan::TaskKind::Embodied;
        const auto format = embodied ? cfg.format : replan::PromptFormat::Code;
        for (std::size_t i = 0; i < rec.transcript.size(); ++i) {
            const auto& prompt = rec.transcript[i].prompt;
            const std::string at = who + " call " + std::to_string(i);
            if (!cfg.assert_enabled && has_assertion(prompt, format)) out.push_back(at + ": assertion in prompt");
            if (!embodied) continue;
            if (format == replan::PromptFormat::Nl) {
                if (prompt.rfind("def ", 0) == 0 || prompt.find("\ndef ") != std::string::npos) {
                    out.push_back(at + ": plan header in an NL prompt");
                }
                continue;
            }
            auto blocks = few_shot_blocks(prompt);
            if (blocks.empty()) out.push_back(at + ": no few-shot block found");
            for (const auto& b : blocks) {
                try {
                    dsl::parse_plan(b);
                } catch (const dsl::ParseError& e) {
                    out.push_back(at + ": few-shot block does not parse: " + e.what());
                }
            }
        }
    }
    return out;
}

}  // namespace codeplan::eval
