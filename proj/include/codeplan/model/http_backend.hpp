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

#include "codeplan/model/backend.hpp"

namespace codeplan::model {

// Credential variable read by HttpBackend. Its value is never logged.
inline constexpr const char* kApiKeyEnv = "CODEPLAN_API_KEY";

struct HttpConfig {
    std::string base_url;  // scheme://host[:port]
    std::string path = "/v1/chat/completions";
    std::string model;
    std::string api_key_env = kApiKeyEnv;
    std::string system_prompt;  // optional system message
    double temperature = 0.0;
    int timeout_seconds = 120;
};

// Sends one chat-completion request per call and reports the provider's
// usage counts. Request and response bodies are returned verbatim.
class HttpBackend final : public ModelBackend {
public:
    explicit HttpBackend(HttpConfig cfg);
    Completion complete(std::string_view prompt, const CallContext& ctx) override;

    std::string request_body(std::string_view prompt) const;

private:
    HttpConfig cfg_;
};

}  // namespace codeplan::model
