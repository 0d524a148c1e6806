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

#include "codeplan/agents/orchestrator.hpp"

#include "codeplan/dsl/parser.hpp"

namespace codeplan::agents {

std::string_view to_string(MessageKind k) {
    switch (k) {
        case MessageKind::Plan: return "plan";
        case MessageKind::CodeAct: return "codeact";
        case MessageKind::ToolResult: return "tool_result";
        case MessageKind::ErrorFeedback: return "error_feedback";
        case MessageKind::Final: return "final";
    }
    return "?";
}

const AgentMessage& EpisodeLog::append(std::size_t round, std::string from, std::string to, MessageKind kind,
                                       Phase phase, Value body, model::TokenUsage tokens) {
    AgentMessage m;
    m.seq = messages_.size();
    m.round = round;
    m.from = std::move(from);
    m.to = std::move(to);
    m.kind = kind;
    m.phase = phase;
    m.body = std::move(body);
    m.tokens = tokens;
    messages_.push_back(std::move(m));
    return messages_.back();
}

std::string EpisodeLog::to_ndjson() const {
    std::string out;
    for (const auto& m : messages_) {
        Value v = Value::object();
        v["seq"] = m.seq;
        v["round"] = m.round;
        v["from"] = m.from;
        v["to"] = m.to;
        v["kind"] = to_string(m.kind);
        v["phase"] = to_string(m.phase);
        v["body"] = m.body;
        v["input_tokens"] = m.tokens.input_tokens;
        v["output_tokens"] = m.tokens.output_tokens;
        out += v.dump() + "\n";
    }
    return out;
}

std::vector<std::string> phase_violations(const EpisodeLog& log, const std::vector<Phase>& cycle) {
    std::vector<std::string> out;
    auto rank = [&](Phase p) -> long {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (cycle[i] == p) return static_cast<long>(i);
        }
        return -1;
    };
    std::optional<std::size_t> round;
    long last = -1;
    for (const auto& m : log.messages()) {
        const long r = rank(m.phase);
        const std::string where = "message " + std::to_string(m.seq);
        if (r < 0) {
            out.push_back(where + ": phase " + std::string(to_string(m.phase)) + " is not in the cycle");
            continue;
        }
        if (!round || m.round != *round) {
            if (round && m.round < *round) out.push_back(where + ": round goes backwards");
            if (r != 0) out.push_back(where + ": round does not open with " + std::string(to_string(cycle[0])));
            round = m.round;
        } else if (r < last) {
            out.push_back(where + ": phase " + std::string(to_string(m.phase)) + " out of order");
        }
        last = r;
    }
    return out;
}

namespace {

Value bindings_value(const Bindings& b) {
    Value v = Value::object();
    for (const auto& [k, x] : b) v[k] = x;
    return v;
}

std::set<std::string> bound_names(const Bindings& b) {
    std::set<std::string> out;
    for (const auto& [k, v] : b) out.insert(k);
    return out;
}

std::string prompt_head(const AgentConfig& cfg, const ToolRegistry& registry) {
    return render_system_prompt(cfg, registry);
}

ErrorFeedback rejection(const std::string& why, const ErrorFeedback* prev, const Bindings& bindings,
                        const Value& tool_state) {
    ErrorFeedback fb;
    fb.error_message = "completion rejected: " + why;
    fb.bindings = prev ? prev->bindings : bindings;
    fb.tool_state = prev ? prev->tool_state : tool_state;
    fb.agent_id = kToolCallerId;
    return fb;
}

// Parses and lowers a completion, or explains why not.
std::variant<std::vector<CodeActStep>, std::string> accept(const std::string& completion, const char* header,
                                                           const ToolRegistry& registry,
                                                           const std::set<std::string>& bound) {
    try {
        auto plan = dsl::parse_completion(completion, header);
        const std::string want = std::string(header).substr(4, std::string(header).size() - 7);
        if (plan.name != want) return "expected plan " + want + ", got " + plan.name;
        return lower_plan_to_codeact(plan, registry, bound);
    } catch (const dsl::ParseError& e) {
        return std::string("parse error: ") + e.what();
    } catch (const LoweringError& e) {
        return std::string(e.what());
    }
}

void log_feedback(EpisodeLog& log, std::size_t round, ErrorFeedback& fb) {
    fb.timestamp = log.size();
    log.append(round, kToolCallerId, kReplannerId, MessageKind::ErrorFeedback, Phase::Observation, to_json(fb));
}

}  // namespace

Value to_json(const ErrorFeedback& fb) {
    Value v = Value::object();
    v["error_message"] = fb.error_message;
    v["failing_call"] = fb.failing_call ? to_value(*fb.failing_call) : Value(nullptr);
    v["agent_id"] = fb.agent_id;
    v["timestamp"] = fb.timestamp;
    v["line"] = fb.line;
    v["limit_exceeded"] = fb.limit_exceeded;
    v["tool_state"] = fb.tool_state;
    v["bindings"] = bindings_value(fb.bindings);
    return v;
}

std::string serialize_feedback(const ErrorFeedback& fb) {
    std::string out = "error_message = " + Value(fb.error_message).dump() + "\n";
    if (fb.failing_call) {
        for (const auto& [k, v] : fb.failing_call->args.items()) out += "failed_" + k + " = " + v.dump() + "\n";
        out += "failing_call = " + encode_tool_call(*fb.failing_call) + "\n";
    }
    out += "agent_id = " + Value(fb.agent_id).dump() + "\n";
    out += "timestamp = " + std::to_string(fb.timestamp) + "\n";
    out += "tool_state = " + (fb.tool_state.is_null() ? Value::object() : fb.tool_state).dump() + "\n";
    out += "bindings = " + bindings_value(fb.bindings).dump() + "\n";
    return out;
}

std::string initial_agent_prompt(const AgentConfig& cfg, const ToolRegistry& registry) {
    return prompt_head(cfg, registry) + "\n" + kInitialPlanHeader + "\n";
}

std::string replan_agent_prompt(const AgentConfig& cfg, const ToolRegistry& registry, const ErrorFeedback& fb) {
    return prompt_head(cfg, registry) + "\n# Error Feedback\n" + serialize_feedback(fb) + "\n" + kUpdatedPlanHeader +
           "\n";
}

ReplanOutcome replan_from_feedback(const ErrorFeedback& fb, model::ModelBackend& backend, const AgentConfig& cfg,
                                   std::size_t budget, ReplanContext& ctx) {
    ReplanOutcome out;
    ErrorFeedback current = fb;
    while (out.calls < budget) {
        const std::size_t round = ctx.next_call_index;
        const std::string prompt = replan_agent_prompt(cfg, *ctx.registry, current);
        ++out.calls;
        model::Completion c;
        try {
            c = backend.complete(prompt, {ctx.episode_id, ctx.task_id, ctx.next_call_index});
        } catch (const model::ModelError& e) {
            out.result = Abort{current, std::string("backend error: ") + e.what(), true};
            return out;
        }
        ++ctx.next_call_index;
        if (ctx.transcript) ctx.transcript->push_back({prompt, c.text, c.usage, c.usage_source});
        if (ctx.log) {
            ctx.log->append(round, kReplannerId, kToolCallerId, MessageKind::Plan, Phase::Thought,
                            Value{{"completion", c.text}}, c.usage);
        }
        auto accepted = accept(c.text, kUpdatedPlanHeader, *ctx.registry, ctx.bound);
        if (auto* steps = std::get_if<std::vector<CodeActStep>>(&accepted)) {
            if (ctx.log) {
                ctx.log->append(round, kReplannerId, kToolCallerId, MessageKind::CodeAct, Phase::Code,
                                Value{{"codeact", render_codeact(*steps)}});
            }
            out.result = std::move(*steps);
            return out;
        }
        current = rejection(std::get<std::string>(accepted), &fb, {}, {});
        if (ctx.log) log_feedback(*ctx.log, round, current);
    }
    out.result = Abort{current, budget == 0 ? "replan budget is zero" : "replan budget exhausted"};
    return out;
}

model::TokenUsage AgentEpisodeResult::usage() const {
    model::TokenUsage u;
    for (const auto& t : transcript) u += t.usage;
    return u;
}

AgentEpisodeResult run_agent_episode(const AgentConfig& cfg, const ToolRegistry& registry, const tools::Corpus& corpus,
                                     model::ModelBackend& backend, const std::string& task_id,
                                     const AgentEpisodeOptions& opts) {
    AgentEpisodeResult r;
    const std::string episode = opts.episode_id.empty() ? task_id : opts.episode_id;
    ToolSession session(corpus);
    ToolMemo memo;

    const std::string prompt = initial_agent_prompt(cfg, registry);
    model::Completion c;
    try {
        c = backend.complete(prompt, {episode, task_id, 0});
    } catch (const model::ModelError& e) {
        r.abort = Abort{{}, std::string("backend error: ") + e.what(), true};
        return r;
    }
    r.transcript.push_back({prompt, c.text, c.usage, c.usage_source});
    r.log.append(0, kPlannerId, kToolCallerId, MessageKind::Plan, Phase::Thought, Value{{"completion", c.text}},
                 c.usage);

    std::optional<std::vector<CodeActStep>> steps;
    std::optional<ErrorFeedback> fb;
    auto accepted = accept(c.text, kInitialPlanHeader, registry, {});
    if (auto* s = std::get_if<std::vector<CodeActStep>>(&accepted)) {
        r.log.append(0, kPlannerId, kToolCallerId, MessageKind::CodeAct, Phase::Code,
                     Value{{"codeact", render_codeact(*s)}});
        steps = std::move(*s);
    } else {
        fb = rejection(std::get<std::string>(accepted), nullptr, r.bindings, session.state());
        log_feedback(r.log, 0, *fb);
    }

    for (;;) {
        const std::size_t round = r.transcript.size() - 1;
        if (steps) {
            auto res = run_codeact(*steps, registry, session, opts.limits, r.bindings, &memo);
            const char* caller = round == 0 ? kPlannerId : kReplannerId;
            for (const auto& inv : res.invocations) {
                Value body{{"call", to_value(inv.call)}, {"ok", inv.ok}, {"memoized", inv.memoized}};
                if (inv.ok) {
                    body["result"] = inv.result;
                } else {
                    body["error"] = inv.error;
                }
                r.log.append(round, kBrowserAgentId, caller, MessageKind::ToolResult, Phase::Observation, body);
            }
            r.invocations.insert(r.invocations.end(), res.invocations.begin(), res.invocations.end());
            r.bindings = res.bindings;
            if (!res.error) {
                r.completed = true;
                r.answer = res.answer;
                if (res.answer) {
                    r.prediction = value_text(*res.answer);
                } else if (res.last_bound) {
                    r.prediction = value_text(r.bindings.at(*res.last_bound));
                }
                r.log.append(round, kToolCallerId, kUserId, MessageKind::Final, Phase::Observation,
                             Value{{"answer", res.answer ? *res.answer : Value(nullptr)}, {"prediction", r.prediction}});
                return r;
            }
            fb = std::move(res.error);
            log_feedback(r.log, round, *fb);
        }
        r.feedbacks.push_back(*fb);

        ReplanContext ctx;
        ctx.registry = &registry;
        ctx.bound = bound_names(r.bindings);
        ctx.episode_id = episode;
        ctx.task_id = task_id;
        ctx.next_call_index = r.transcript.size();
        ctx.log = &r.log;
        ctx.transcript = &r.transcript;
        auto out = replan_from_feedback(*fb, backend, cfg, opts.budget - r.replans_used, ctx);
        r.replans_used += out.calls;
        if (auto* a = std::get_if<Abort>(&out.result)) {
            r.abort = std::move(*a);
            return r;
        }
        steps = std::move(std::get<std::vector<CodeActStep>>(out.result));
    }
}

}  // namespace codeplan::agents
