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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codeplan/dsl/plan_ast.hpp"
#include "codeplan/exec/error_trace.hpp"
#include "codeplan/world/simulator.hpp"
#include "codeplan/world/world_state.hpp"

namespace codeplan::exec {

struct ExecLimits {
    std::size_t max_steps = 100;
    std::size_t max_loop_iters = 20;
};

enum class StepKind { Comment, Action, Assertion, Binding, Return };

struct StepRecord {
    dsl::Statement statement;
    StepKind kind = StepKind::Action;
    bool ok = true;
    bool in_recovery = false;
    world::ActionOutcome outcome;  // actions only
};

struct ExecutionTrace {
    std::vector<StepRecord> steps;
    bool completed = false;
    std::optional<ErrorTrace> failure;
    std::size_t attempted = 0;  // action calls started
    std::size_t succeeded = 0;  // action calls that succeeded
    std::size_t recoveries = 0;  // recovery blocks run
};

// Runs `plan` against `state`. Comments are logged but not counted. An
// assertion whose predicate is false runs its recovery block once and is
// re-checked once; a still-false assertion, a failed action, or an exhausted
// step/loop budget halts with `failure` set and the world left as it was
// after the last successful action. UnknownObject propagates.
std::pair<world::WorldState, ExecutionTrace> execute(const dsl::PlanAst& plan,
                                                     const world::WorldState& state,
                                                     const ExecLimits& limits = {});

}  // namespace codeplan::exec
