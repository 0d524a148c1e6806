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
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codeplan/world/simulator.hpp"
#include "codeplan/world/world_state.hpp"

namespace codeplan::world {

class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& file, int line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
};

// `room <id>` and `object <id> in <room> [sittable|edible|container]...`.
// Rooms and objects are returned in declaration order via `order`.
struct WorldFile {
    WorldState state;                 // agent_room left empty
    std::vector<std::string> order;   // rooms and objects, as declared
};

WorldFile parse_world(std::string_view text, const std::string& origin = "<world>");
WorldFile load_world(const std::filesystem::path& path);

// `task <name>`, `goal <predicate>`, `init agent <room>`; any other
// `<key> <value...>` record is kept in `records` for higher layers.
struct TaskFile {
    std::string name;
    GoalSpec goals;
    std::string init_room;
    std::multimap<std::string, std::string> records;

    std::string record(const std::string& key, const std::string& fallback = "") const;
    std::vector<std::string> records_of(const std::string& key) const;
};

TaskFile parse_task_file(std::string_view text, const std::string& origin = "<task>");
TaskFile load_task_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace codeplan::world
