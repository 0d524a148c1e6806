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
#include <mutex>
#include <string>
#include <vector>

#include "codeplan/model/backend.hpp"

namespace codeplan::model {

// One persisted model exchange, keyed by (episode, call_index).
struct TranscriptRecord {
    std::string episode;
    std::size_t call_index = 0;
    std::string prompt;
    std::string completion;
    TokenUsage usage;
    std::string usage_source;
    std::string request_body;
    std::string response_body;

    bool operator==(const TranscriptRecord&) const = default;
};

std::string to_ndjson_line(const TranscriptRecord& r);
TranscriptRecord parse_ndjson_line(std::string_view line);

// Thread-safe append-only store. Serialization sorts by key so the file does
// not depend on episode scheduling.
class TranscriptStore {
public:
    TranscriptStore() = default;
    TranscriptStore(const TranscriptStore& other);
    TranscriptStore& operator=(const TranscriptStore& other);

    void append(TranscriptRecord r);
    std::vector<TranscriptRecord> records() const;  // sorted by (episode, call_index)
    const TranscriptRecord* find(const std::string& episode, std::size_t call_index) const;
    std::size_t size() const;

    std::string to_ndjson() const;
    void save(const std::filesystem::path& path) const;
    static TranscriptStore parse(std::string_view ndjson);
    static TranscriptStore load(const std::filesystem::path& path);

private:
    mutable std::mutex mu_;
    std::vector<TranscriptRecord> records_;
};

class RecordingBackend final : public ModelBackend {
public:
    RecordingBackend(ModelBackend& inner, TranscriptStore& store) : inner_(inner), store_(store) {}
    Completion complete(std::string_view prompt, const CallContext& ctx) override;

private:
    ModelBackend& inner_;
    TranscriptStore& store_;
};

// Serves completions from a store. The prompt must match the recorded one.
class ReplayBackend final : public ModelBackend {
public:
    explicit ReplayBackend(TranscriptStore store) : store_(std::move(store)) {}
    Completion complete(std::string_view prompt, const CallContext& ctx) override;

private:
    TranscriptStore store_;
};

}  // namespace codeplan::model
