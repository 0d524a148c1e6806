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
#include <string_view>
#include <variant>
#include <vector>

#include "codeplan/agents/codeact.hpp"
#include "codeplan/agents/system_prompt.hpp"
#include "codeplan/model/backend.hpp"
#include "codeplan/replan/episode.hpp"

namespace codeplan::agents {

enum class MessageKind { Plan, CodeAct, ToolResult, ErrorFeedback, Final };

std::string_view to_string(MessageKind k);

inline constexpr const char* kPlannerId = "planner";
inline constexpr const char* kReplannerId = "replanner";
inline constexpr const char* kUserId = "user";

struct AgentMessage {
    std::size_t seq = 0;
    std::size_t round = 0;  // index of the model call the message belongs to
    std::string from;
    std::string to;
    MessageKind kind = MessageKind::Plan;
    Phase phase = Phase::Thought;
    Value body;
    model::TokenUsage tokens;
};

// Ordered, append-only record of one episode.
class EpisodeLog {
public:
    const AgentMessage& append(std::size_t round, std::string from, std::string to, MessageKind kind, Phase phase,
                               Value body, model::TokenUsage tokens = {});
    const std::vector<AgentMessage>& messages() const { return messages_; }
    std::size_t size() const { return messages_.size(); }

    // One JSON object per line.
    std::string to_ndjson() const;

private:
    std::vector<AgentMessage> messages_;
};

// Each round must open with a thought and never step back in `cycle`.
// Returns a description of every violation.
std::vector<std::string> phase_violations(const EpisodeLog& log, const std::vector<Phase>& cycle);

// `name = value` lines: error_message, failed_<param> per failing-call
// argument, failing_call (wire form), agent_id, timestamp, tool_state and
// bindings. Values are JSON.
std::string serialize_feedback(const ErrorFeedback& fb);

inline constexpr const char* kInitialPlanHeader = "def initial_plan():";
inline constexpr const char* kUpdatedPlanHeader = "def updated_plan():";

std::string initial_agent_prompt(const AgentConfig& cfg, const ToolRegistry& registry);
std::string replan_agent_prompt(const AgentConfig& cfg, const ToolRegistry& registry, const ErrorFeedback& fb);

struct Abort {
    ErrorFeedback feedback;  // the last feedback, unchanged
    std::string reason;
    bool backend_failure = false;  // the model call itself failed
};

// Shared state a replan needs from the running episode.
struct ReplanContext {
    const ToolRegistry* registry = nullptr;
    std::set<std::string> bound;  // names already bound
    std::string episode_id;
    std::string task_id;
    std::size_t next_call_index = 0;
    EpisodeLog* log = nullptr;
    std::vector<replan::TranscriptEntry>* transcript = nullptr;
};

struct ReplanOutcome {
    std::variant<std::vector<CodeActStep>, Abort> result;
    std::size_t calls = 0;  // model calls made, never more than the budget
};

// Sends the feedback with the updated-plan header, then parses and lowers
// the reply. A completion that fails to parse or lower is answered with a new
// feedback and costs one more unit of budget. budget = 0 aborts at once.
// A backend error aborts with the reason.
ReplanOutcome replan_from_feedback(const ErrorFeedback& fb, model::ModelBackend& backend, const AgentConfig& cfg,
                                   std::size_t budget, ReplanContext& ctx);

struct AgentEpisodeOptions {
    std::size_t budget = replan::kDefaultReplanBudget;
    exec::ExecLimits limits;
    std::string episode_id;  // defaults to the task id
};

struct AgentEpisodeResult {
    EpisodeLog log;
    std::vector<replan::TranscriptEntry> transcript;
    Bindings bindings;
    std::optional<Value> answer;
    std::string prediction;  // answer text, or the last bound value
    std::size_t replans_used = 0;
    std::vector<ErrorFeedback> feedbacks;
    std::vector<InvocationRecord> invocations;
    std::optional<Abort> abort;
    bool completed = false;

    model::TokenUsage usage() const;
};

// Planner -> ToolCaller -> (Replanner -> ToolCaller)*. Bindings and tool
// state survive a replan; the updated plan starts where the failed one
// stopped. The model is called at most budget + 1 times.
AgentEpisodeResult run_agent_episode(const AgentConfig& cfg, const ToolRegistry& registry, const tools::Corpus& corpus,
                                     model::ModelBackend& backend, const std::string& task_id,
                                     const AgentEpisodeOptions& opts = {});

Value to_json(const ErrorFeedback& fb);

}  // namespace codeplan::agents
