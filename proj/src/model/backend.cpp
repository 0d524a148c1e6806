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

#include "codeplan/model/backend.hpp"

#include <json.hpp>

#include "codeplan/model/tokenizer.hpp"
#include "codeplan/world/world_files.hpp"

namespace codeplan::model {

std::string_view to_string(ModelErrorKind k) {
    switch (k) {
        case ModelErrorKind::ScriptExhausted: return "ScriptExhausted";
        case ModelErrorKind::ScriptMismatch: return "ScriptMismatch";
        case ModelErrorKind::Transport: return "Transport";
        case ModelErrorKind::ProviderRejection: return "ProviderRejection";
    }
    return "?";
}

TokenUsage reference_usage(std::string_view prompt, std::string_view completion) {
    return {count_tokens(prompt), count_tokens(completion)};
}

ScriptedBackend::ScriptedBackend(std::vector<ScriptEntry> script) { scripts_["*"] = std::move(script); }

ScriptedBackend::ScriptedBackend(ScriptedBackend&& other) noexcept {
    std::lock_guard lock(other.mu_);
    scripts_ = std::move(other.scripts_);
    cursors_ = std::move(other.cursors_);
}

void ScriptedBackend::set_script(const std::string& task_id, std::vector<ScriptEntry> script) {
    std::lock_guard lock(mu_);
    scripts_[task_id] = std::move(script);
}

Completion ScriptedBackend::complete(std::string_view prompt, const CallContext& ctx) {
    if (prompt.empty()) throw std::invalid_argument("empty prompt");
    ScriptEntry entry;
    {
        std::lock_guard lock(mu_);
        auto it = scripts_.find(ctx.task_id);
        if (it == scripts_.end()) it = scripts_.find("*");
        std::size_t& cursor = cursors_[ctx.episode_id];
        if (it == scripts_.end() || cursor >= it->second.size()) {
            throw ModelError(ModelErrorKind::ScriptExhausted,
                             "no scripted completion left for episode " + ctx.episode_id);
        }
        entry = it->second[cursor++];
    }
    if (!entry.match.empty() && prompt.find(entry.match) == std::string_view::npos) {
        throw ModelError(ModelErrorKind::ScriptMismatch, "prompt lacks \"" + entry.match + "\"");
    }
    Completion c;
    c.text = entry.completion;
    c.usage = entry.usage ? *entry.usage : reference_usage(prompt, c.text);
    c.usage_source = entry.usage ? "script" : "reference";
    return c;
}

ScriptedBackend ScriptedBackend::load(const std::filesystem::path& path) {
    ScriptedBackend b;
    auto base = path.parent_path();
    try {
        auto j = nlohmann::json::parse(world::read_text_file(path));
        for (const auto& [task, entries] : j.at("scripts").items()) {
            std::vector<ScriptEntry> script;
            for (const auto& e : entries) {
                ScriptEntry s;
                s.match = e.value("match", "");
                if (e.contains("completion_file")) {
                    s.completion = world::read_text_file(base / e.at("completion_file").get<std::string>());
                } else {
                    s.completion = e.at("completion").get<std::string>();
                }
                if (e.contains("usage")) {
                    s.usage = TokenUsage{e.at("usage").at("input_tokens").get<std::uint64_t>(),
                                         e.at("usage").at("output_tokens").get<std::uint64_t>()};
                }
                script.push_back(std::move(s));
            }
            b.scripts_[task] = std::move(script);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("bad script file " + path.string() + ": " + e.what());
    }
    return b;
}

Completion FunctionBackend::complete(std::string_view prompt, const CallContext& ctx) {
    if (prompt.empty()) throw std::invalid_argument("empty prompt");
    Completion c;
    c.text = fn_(prompt, ctx);
    c.usage = reference_usage(prompt, c.text);
    return c;
}

}  // namespace codeplan::model
