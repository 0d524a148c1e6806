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

#include <optional>
#include <string>
#include <vector>

#include "codeplan/exec/executor.hpp"
#include "codeplan/model/backend.hpp"
#include "codeplan/replan/task_prompt.hpp"
#include "codeplan/replan/task_spec.hpp"
#include "codeplan/world/world_state.hpp"

namespace codeplan::replan {

inline constexpr std::size_t kDefaultReplanBudget = 3;

struct TranscriptEntry {
    std::string prompt;
    std::string completion;
    model::TokenUsage usage;
    std::string usage_source;
};

struct EpisodeOptions {
    PromptOptions prompt;
    std::size_t budget = kDefaultReplanBudget;
    exec::ExecLimits limits;
    std::string episode_id;  // defaults to the task id
};

struct EpisodeResult {
    world::WorldState final_state;
    std::vector<exec::ExecutionTrace> traces;
    std::size_t replans_used = 0;
    std::vector<TranscriptEntry> transcript;
    std::optional<std::string> aborted;  // backend failure that ended the episode
    world::GoalScore score;
    bool untranslated_comments = false;

    model::TokenUsage usage() const;
};

// The feedback loop: prompt, parse, validate, execute, and on failure send the
// serialized error trace back for an updated plan while budget remains.
// World state carries over, so an updated plan resumes where the last one
// stopped. An unusable completion is recorded as a Rejected trace and the
// same prompt is re-sent with a one-line note.
EpisodeResult run_episode(const TaskSpec& task, model::ModelBackend& backend, const EpisodeOptions& opts = {});

}  // namespace codeplan::replan
