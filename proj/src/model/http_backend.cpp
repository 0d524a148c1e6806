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

#include "codeplan/model/http_backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

namespace codeplan::model {

HttpBackend::HttpBackend(HttpConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.base_url.empty()) throw std::invalid_argument("HttpBackend needs a base url");
    if (cfg_.model.empty()) throw std::invalid_argument("HttpBackend needs a model id");
}

std::string HttpBackend::request_body(std::string_view prompt) const {
    nlohmann::ordered_json req;
    req["model"] = cfg_.model;
    nlohmann::ordered_json messages = nlohmann::ordered_json::array();
    if (!cfg_.system_prompt.empty()) messages.push_back({{"role", "system"}, {"content", cfg_.system_prompt}});
    messages.push_back({{"role", "user"}, {"content", std::string(prompt)}});
    req["messages"] = std::move(messages);
    req["temperature"] = cfg_.temperature;
    return req.dump();
}

Completion HttpBackend::complete(std::string_view prompt, const CallContext&) {
    if (prompt.empty()) throw std::invalid_argument("empty prompt");
    httplib::Client cli(cfg_.base_url);
    cli.set_connection_timeout(cfg_.timeout_seconds, 0);
    cli.set_read_timeout(cfg_.timeout_seconds, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key && *key) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    Completion c;
    c.request_body = request_body(prompt);
    auto res = cli.Post(cfg_.path, headers, c.request_body, "application/json");
    if (!res) throw ModelError(ModelErrorKind::Transport, httplib::to_string(res.error()));
    c.response_body = res->body;
    if (res->status >= 500) {
        throw ModelError(ModelErrorKind::Transport, "HTTP " + std::to_string(res->status));
    }
    if (res->status != 200) {
        throw ModelError(ModelErrorKind::ProviderRejection, "HTTP " + std::to_string(res->status));
    }
    try {
        auto j = nlohmann::json::parse(res->body);
        c.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
        const auto& u = j.at("usage");
        c.usage = {u.at("prompt_tokens").get<std::uint64_t>(), u.at("completion_tokens").get<std::uint64_t>()};
        c.usage_source = "provider";
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(ModelErrorKind::ProviderRejection, std::string("malformed response: ") + e.what());
    }
    return c;
}

}  // namespace codeplan::model
