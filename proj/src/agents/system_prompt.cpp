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

#include "codeplan/agents/system_prompt.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace codeplan::agents {

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::Thought: return "thought";
        case Phase::Code: return "code";
        case Phase::Observation: return "observation";
    }
    return "?";
}

Phase phase_from_string(std::string_view s) {
    if (s == "thought") return Phase::Thought;
    if (s == "code") return Phase::Code;
    if (s == "observation") return Phase::Observation;
    throw std::invalid_argument("unknown phase " + std::string(s));
}

namespace {

std::vector<std::string> string_list(const Value& v, const char* key) {
    if (!v.is_array()) throw ConfigError(std::string(key) + " must be a list of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) throw ConfigError(std::string(key) + " must be a list of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::string string_field(const Value& v, const char* key) {
    if (!v.is_string()) throw ConfigError(std::string(key) + " must be a string");
    return v.get<std::string>();
}

}  // namespace

AgentConfig parse_agent_config(const Value& v) {
    if (!v.is_object()) throw ConfigError("agent config must be an object");
    AgentConfig cfg;
    for (const auto& [k, val] : v.items()) {
        if (k == "role") {
            cfg.role = string_field(val, "role");
        } else if (k == "tool_interface") {
            cfg.tool_interface = string_field(val, "tool_interface");
        } else if (k == "tools") {
            cfg.tools = string_list(val, "tools");
        } else if (k == "cycle") {
            cfg.cycle.clear();
            for (const auto& p : string_list(val, "cycle")) {
                try {
                    cfg.cycle.push_back(phase_from_string(p));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
        } else if (k == "team") {
            cfg.team = string_list(val, "team");
        } else if (k == "task") {
            cfg.task = string_field(val, "task");
        } else {
            throw ConfigError("unknown agent config key " + k);
        }
    }
    return cfg;
}

AgentConfig load_agent_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return parse_agent_config(Value::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

Value to_json(const AgentConfig& cfg) {
    Value v = Value::object();
    v["role"] = cfg.role;
    v["tool_interface"] = cfg.tool_interface;
    v["tools"] = cfg.tools;
    Value cycle = Value::array();
    for (auto p : cfg.cycle) cycle.push_back(to_string(p));
    v["cycle"] = cycle;
    v["team"] = cfg.team;
    v["task"] = cfg.task;
    return v;
}

void check_agent_config(const AgentConfig& cfg, const ToolRegistry& registry) {
    for (const auto& t : cfg.tools) {
        if (!registry.contains(t)) throw UnknownTool(t);
    }
    if (cfg.cycle.empty()) throw ConfigError("cycle is empty");
    std::set<Phase> seen(cfg.cycle.begin(), cfg.cycle.end());
    if (seen.size() != cfg.cycle.size()) throw ConfigError("cycle repeats a phase");
}

std::string render_system_prompt(const AgentConfig& cfg, const ToolRegistry& registry) {
    check_agent_config(cfg, registry);
    std::ostringstream out;
    out << "config = {\n";
    out << "  role: '" << cfg.role << "',\n";
    out << "  tools: '" << cfg.tool_interface << "',\n";
    out << "  cycle: [";
    for (std::size_t i = 0; i < cfg.cycle.size(); ++i) out << (i ? ", " : "") << to_string(cfg.cycle[i]);
    out << "]\n}\n";
    if (cfg.tools.empty()) {
        out << "available_tools = []\n";
    } else {
        out << "available_tools = [\n";
        for (std::size_t i = 0; i < cfg.tools.size(); ++i) {
            if (i % 3 == 0) out << "  ";
            out << cfg.tools[i];
            if (i + 1 < cfg.tools.size()) out << ",";
            out << ((i % 3 == 2 || i + 1 == cfg.tools.size()) ? "\n" : " ");
        }
        out << "]\n";
    }
    out << "team_agent = [";
    for (std::size_t i = 0; i < cfg.team.size(); ++i) out << (i ? ", " : "") << cfg.team[i];
    out << "]\n";
    out << "task = " << Value(cfg.task).dump() << "\n";
    return out.str();
}

}  // namespace codeplan::agents
