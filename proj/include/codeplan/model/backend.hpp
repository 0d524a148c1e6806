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
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codeplan/model/cost.hpp"

namespace codeplan::model {

enum class ModelErrorKind {
    ScriptExhausted,
    ScriptMismatch,  // scripted or replayed entry does not fit the prompt
    Transport,
    ProviderRejection,
};

std::string_view to_string(ModelErrorKind k);

class ModelError : public std::runtime_error {
public:
    ModelError(ModelErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ModelErrorKind kind() const noexcept { return kind_; }

private:
    ModelErrorKind kind_;
};

// Identifies one model call. Episode ids are unique within a run.
struct CallContext {
    std::string episode_id;
    std::string task_id;
    std::size_t call_index = 0;
};

struct Completion {
    std::string text;
    TokenUsage usage;
    std::string usage_source = "reference";  // "reference" or "provider"
    std::string request_body;                // HTTP backend only
    std::string response_body;
};

class ModelBackend {
public:
    virtual ~ModelBackend() = default;
    // Must be safe to call concurrently from different episodes.
    virtual Completion complete(std::string_view prompt, const CallContext& ctx) = 0;
};

// Usage computed with the reference tokenizer.
TokenUsage reference_usage(std::string_view prompt, std::string_view completion);

struct ScriptEntry {
    std::string match;       // substring the prompt must contain; empty matches anything
    std::string completion;
    std::optional<TokenUsage> usage;
};

// Replays canned completions in order. Scripts are keyed by task id ("*"
// is the fallback) and every episode keeps its own cursor.
class ScriptedBackend final : public ModelBackend {
public:
    ScriptedBackend() = default;
    explicit ScriptedBackend(std::vector<ScriptEntry> script);
    ScriptedBackend(ScriptedBackend&& other) noexcept;

    void set_script(const std::string& task_id, std::vector<ScriptEntry> script);
    Completion complete(std::string_view prompt, const CallContext& ctx) override;

    // {"scripts": {"<task>": [{"match": "...", "completion": "..." | "completion_file": "..."}]}}
    // completion_file paths resolve against the script file's directory.
    static ScriptedBackend load(const std::filesystem::path& path);

private:
    std::mutex mu_;
    std::map<std::string, std::vector<ScriptEntry>> scripts_;
    std::map<std::string, std::size_t> cursors_;
};

// Wraps a callable; handy for fixed or adversarial stand-ins.
class FunctionBackend final : public ModelBackend {
public:
    using Fn = std::function<std::string(std::string_view prompt, const CallContext& ctx)>;
    explicit FunctionBackend(Fn fn) : fn_(std::move(fn)) {}
    Completion complete(std::string_view prompt, const CallContext& ctx) override;

private:
    Fn fn_;
};

}  // namespace codeplan::model
