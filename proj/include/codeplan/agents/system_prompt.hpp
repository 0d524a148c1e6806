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
#include <string>
#include <string_view>
#include <vector>

#include "codeplan/agents/tool_call.hpp"
#include "codeplan/agents/tool_registry.hpp"

namespace codeplan::agents {

enum class Phase { Thought, Code, Observation };

std::string_view to_string(Phase p);
Phase phase_from_string(std::string_view s);  // throws std::invalid_argument

struct AgentConfig {
    std::string role = "expert_assistant";
    std::string tool_interface = "python_callable";
    std::vector<std::string> tools;
    std::vector<Phase> cycle = {Phase::Thought, Phase::Code, Phase::Observation};
    std::vector<std::string> team;
    std::string task;

    bool operator==(const AgentConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Keys: role, tool_interface, tools, cycle, team, task. Missing keys keep
// their defaults; unknown keys are rejected. Throws ConfigError.
AgentConfig parse_agent_config(const Value& v);
AgentConfig load_agent_config(const std::filesystem::path& path);
Value to_json(const AgentConfig& cfg);

// Throws UnknownTool when a listed tool is not registered, ConfigError on an
// empty cycle or repeated phase.
void check_agent_config(const AgentConfig& cfg, const ToolRegistry& registry);

// The codified block: config map, available_tools (three per line),
// team_agent and task.
std::string render_system_prompt(const AgentConfig& cfg, const ToolRegistry& registry);

}  // namespace codeplan::agents
