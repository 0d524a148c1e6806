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

#include "codeplan/model/recording.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "codeplan/world/world_files.hpp"

namespace codeplan::model {

std::string to_ndjson_line(const TranscriptRecord& r) {
    nlohmann::ordered_json j;
    j["episode"] = r.episode;
    j["call_index"] = r.call_index;
    j["prompt"] = r.prompt;
    j["completion"] = r.completion;
    j["input_tokens"] = r.usage.input_tokens;
    j["output_tokens"] = r.usage.output_tokens;
    j["usage_source"] = r.usage_source;
    if (!r.request_body.empty()) j["request_body"] = r.request_body;
    if (!r.response_body.empty()) j["response_body"] = r.response_body;
    return j.dump();
}

TranscriptRecord parse_ndjson_line(std::string_view line) {
    try {
        auto j = nlohmann::json::parse(line);
        TranscriptRecord r;
        r.episode = j.at("episode").get<std::string>();
        r.call_index = j.at("call_index").get<std::size_t>();
        r.prompt = j.at("prompt").get<std::string>();
        r.completion = j.at("completion").get<std::string>();
        r.usage = {j.at("input_tokens").get<std::uint64_t>(), j.at("output_tokens").get<std::uint64_t>()};
        r.usage_source = j.value("usage_source", "");
        r.request_body = j.value("request_body", "");
        r.response_body = j.value("response_body", "");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad transcript record: ") + e.what());
    }
}

TranscriptStore::TranscriptStore(const TranscriptStore& other) : records_(other.records()) {}

TranscriptStore& TranscriptStore::operator=(const TranscriptStore& other) {
    if (this != &other) {
        auto copy = other.records();
        std::lock_guard lock(mu_);
        records_ = std::move(copy);
    }
    return *this;
}

void TranscriptStore::append(TranscriptRecord r) {
    std::lock_guard lock(mu_);
    records_.push_back(std::move(r));
}

std::vector<TranscriptRecord> TranscriptStore::records() const {
    std::vector<TranscriptRecord> out;
    {
        std::lock_guard lock(mu_);
        out = records_;
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.episode, a.call_index) < std::tie(b.episode, b.call_index);
    });
    return out;
}

const TranscriptRecord* TranscriptStore::find(const std::string& episode, std::size_t call_index) const {
    std::lock_guard lock(mu_);
    for (const auto& r : records_) {
        if (r.episode == episode && r.call_index == call_index) return &r;
    }
    return nullptr;
}

std::size_t TranscriptStore::size() const {
    std::lock_guard lock(mu_);
    return records_.size();
}

std::string TranscriptStore::to_ndjson() const {
    std::string out;
    for (const auto& r : records()) {
        out += to_ndjson_line(r);
        out += '\n';
    }
    return out;
}

void TranscriptStore::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << to_ndjson();
}

TranscriptStore TranscriptStore::parse(std::string_view ndjson) {
    TranscriptStore s;
    std::size_t pos = 0;
    while (pos < ndjson.size()) {
        auto nl = ndjson.find('\n', pos);
        if (nl == std::string_view::npos) nl = ndjson.size();
        auto line = ndjson.substr(pos, nl - pos);
        if (!line.empty()) s.records_.push_back(parse_ndjson_line(line));
        pos = nl + 1;
    }
    return s;
}

TranscriptStore TranscriptStore::load(const std::filesystem::path& path) {
    return parse(world::read_text_file(path));
}

Completion RecordingBackend::complete(std::string_view prompt, const CallContext& ctx) {
    Completion c = inner_.complete(prompt, ctx);
    TranscriptRecord r;
    r.episode = ctx.episode_id;
    r.call_index = ctx.call_index;
    r.prompt = std::string(prompt);
    r.completion = c.text;
    r.usage = c.usage;
    r.usage_source = c.usage_source;
    r.request_body = c.request_body;
    r.response_body = c.response_body;
    store_.append(std::move(r));
    return c;
}

Completion ReplayBackend::complete(std::string_view prompt, const CallContext& ctx) {
    const auto* r = store_.find(ctx.episode_id, ctx.call_index);
    if (!r) {
        throw ModelError(ModelErrorKind::ScriptExhausted,
                         "no recorded call " + std::to_string(ctx.call_index) + " for " + ctx.episode_id);
    }
    if (r->prompt != prompt) {
        throw ModelError(ModelErrorKind::ScriptMismatch,
                         "prompt differs from recording at " + ctx.episode_id + "#" + std::to_string(ctx.call_index));
    }
    Completion c;
    c.text = r->completion;
    c.usage = r->usage;
    c.usage_source = r->usage_source;
    c.request_body = r->request_body;
    c.response_body = r->response_body;
    return c;
}

}  // namespace codeplan::model
