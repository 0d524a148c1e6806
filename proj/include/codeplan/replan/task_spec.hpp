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
#include <vector>

#include "codeplan/dsl/plan_ast.hpp"
#include "codeplan/dsl/vocabulary.hpp"
#include "codeplan/world/simulator.hpp"
#include "codeplan/world/world_state.hpp"

namespace codeplan::replan {

enum class TaskKind { Embodied, Qa };

std::string_view to_string(TaskKind k);

// A loaded task file. Embodied tasks carry a world, vocabulary, goals and
// few-shot examples; QA tasks carry a question, a gold answer and the
// corpus and agent config the multi-agent loop needs.
struct TaskSpec {
    std::string id;
    TaskKind kind = TaskKind::Embodied;
    std::filesystem::path source;

    world::WorldState world;           // agent placed in the initial room
    std::vector<std::string> objects;  // rooms and objects in declaration order
    dsl::Vocabulary vocab;             // actions plus every world id
    world::GoalSpec goals;
    std::vector<dsl::PlanAst> examples;

    std::string question;
    std::string answer;
    std::filesystem::path corpus_dir;
    std::filesystem::path agent_config;
};

// Paths inside the file resolve against its directory. Throws
// world::FormatError, dsl::ParseError or dsl::VocabularyError.
TaskSpec load_task(const std::filesystem::path& path);

// A suite file lists task paths, one per line, relative to the suite.
std::vector<TaskSpec> load_suite(const std::filesystem::path& path);

}  // namespace codeplan::replan
