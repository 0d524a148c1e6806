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
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "codeplan/eval/ablation.hpp"
#include "codeplan/exec/executor.hpp"
#include "codeplan/model/http_backend.hpp"

namespace codeplan::eval {

class RunConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Everything a `run` needs besides the suite and the backend selector.
// Relative paths are resolved against the config file's directory.
struct RunConfig {
    AblationConfig ablation;
    std::size_t budget = 3;
    exec::ExecLimits limits;
    std::size_t parallelism = 1;
    std::optional<std::filesystem::path> cost_models;
    std::string cost_model;
    std::optional<std::filesystem::path> translations;
    std::optional<std::filesystem::path> scripts;  // scripted backend
    std::optional<model::HttpConfig> http;         // http backend
};

RunConfig parse_run_config(const nlohmann::ordered_json& v, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace codeplan::eval
