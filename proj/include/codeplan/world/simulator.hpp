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

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codeplan/dsl/plan_ast.hpp"
#include "codeplan/world/world_state.hpp"

namespace codeplan::world {

inline constexpr std::array<std::string_view, 9> kActionNames = {
    "walk", "find", "grab", "sit", "eat", "open", "close_obj", "switch_on", "put_back",
};

bool is_world_action(std::string_view name);

class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An action with its arguments already resolved to object or room ids.
struct GroundAction {
    std::string name;
    std::vector<std::string> args;
};

struct ActionOutcome {
    bool ok = true;
    std::string feedback_message;  // empty when ok
    std::vector<std::string> observations;
};

// Pure transition function. A failed action returns the input state
// unchanged. Throws UnknownObject for ids absent from the world and SimError
// for unsupported actions or wrong arity.
std::pair<WorldState, ActionOutcome> apply_action(const WorldState& state, const GroundAction& action);

// Visibility/proximity fact plus the held-items facts for `obj`.
std::vector<std::string> observe(const WorldState& state, const std::string& obj);

// Evaluates close/visible/holding and the state flags. `contains` is a text
// probe and is rejected with std::invalid_argument.
bool eval_predicate(const WorldState& state, const dsl::Predicate& pred);

struct GoalSpec {
    std::vector<dsl::Predicate> predicates;
};

// Throws std::invalid_argument when empty or when it names unknown objects.
void check_goals(const WorldState& world, const GoalSpec& goals);

struct GoalScore {
    int sr = 0;
    double psr = 0.0;
    std::size_t satisfied = 0;
    std::size_t total = 0;
};

GoalScore score_goals(const WorldState& final_state, bool trace_ok, const GoalSpec& goals);

// True when `message` matches one of the three feedback templates.
bool matches_feedback_template(std::string_view message);

}  // namespace codeplan::world
