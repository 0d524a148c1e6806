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

#include "codeplan/eval/run_config.hpp"

#include <fstream>
#include <set>

namespace codeplan::eval {

namespace {

using Json = nlohmann::ordered_json;

void only_keys(const Json& v, const std::set<std::string>& allowed, const std::string& where) {
    if (!v.is_object()) throw RunConfigError(where + " must be an object");
    for (const auto& [k, _] : v.items()) {
        if (!allowed.count(k)) throw RunConfigError("unknown key '" + k + "' in " + where);
    }
}

std::size_t count(const Json& v, const char* key, std::size_t fallback) {
    if (!v.contains(key)) return fallback;
    const auto& x = v.at(key);
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0) throw RunConfigError(std::string(key) + " must be a non-negative integer");
    return x.get<std::size_t>();
}

std::filesystem::path resolve(const Json& v, const std::filesystem::path& base) {
    if (!v.is_string()) throw RunConfigError("paths must be strings");
    std::filesystem::path p = v.get<std::string>();
    return p.is_absolute() ? p : base / p;
}

}  // namespace

RunConfig parse_run_config(const Json& v, const std::filesystem::path& base_dir) {
    only_keys(v,
              {"ablation", "budget", "limits", "parallelism", "cost_models", "cost_model", "translations", "scripts",
               "http"},
              "run config");
    RunConfig c;
    if (v.contains("ablation")) {
        try {
            c.ablation = parse_ablation(v.at("ablation"));
        } catch (const AblationError& e) {
            throw RunConfigError(e.what());
        }
    }
    c.budget = count(v, "budget", c.budget);
    if (v.contains("limits")) {
        const auto& l = v.at("limits");
        only_keys(l, {"max_steps", "max_loop_iters"}, "limits");
        c.limits.max_steps = count(l, "max_steps", c.limits.max_steps);
        c.limits.max_loop_iters = count(l, "max_loop_iters", c.limits.max_loop_iters);
    }
    c.parallelism = count(v, "parallelism", c.parallelism);
    if (c.parallelism == 0) throw RunConfigError("parallelism must be at least 1");
    if (v.contains("cost_models")) c.cost_models = resolve(v.at("cost_models"), base_dir);
    if (v.contains("cost_model")) c.cost_model = v.at("cost_model").get<std::string>();
    if (!c.cost_model.empty() && !c.cost_models) throw RunConfigError("cost_model given without cost_models");
    if (v.contains("translations")) c.translations = resolve(v.at("translations"), base_dir);
    if (v.contains("scripts")) c.scripts = resolve(v.at("scripts"), base_dir);
    if (v.contains("http")) {
        const auto& h = v.at("http");
        only_keys(h, {"base_url", "path", "model", "api_key_env", "system_prompt", "temperature", "timeout_seconds"},
                  "http");
        model::HttpConfig hc;
        hc.base_url = h.value("base_url", "");
        hc.path = h.value("path", hc.path);
        hc.model = h.value("model", "");
        hc.api_key_env = h.value("api_key_env", hc.api_key_env);
        hc.system_prompt = h.value("system_prompt", "");
        hc.temperature = h.value("temperature", hc.temperature);
        hc.timeout_seconds = h.value("timeout_seconds", hc.timeout_seconds);
        if (hc.base_url.empty() || hc.model.empty()) throw RunConfigError("http needs base_url and model");
        c.http = hc;
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RunConfigError("cannot read " + path.string());
    Json v;
    try {
        v = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw RunConfigError(path.string() + ": " + e.what());
    } catch (const Json::type_error& e) {
        throw RunConfigError(path.string() + ": " + e.what());
    }
    try {
        return parse_run_config(v, path.parent_path());
    } catch (const Json::exception& e) {
        throw RunConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace codeplan::eval
