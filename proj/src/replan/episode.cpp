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

#include "codeplan/replan/episode.hpp"

#include "codeplan/dsl/parser.hpp"
#include "codeplan/dsl/validate.hpp"
#include "codeplan/exec/error_trace.hpp"
#include "codeplan/replan/nl_format.hpp"

namespace codeplan::replan {

model::TokenUsage EpisodeResult::usage() const {
    model::TokenUsage u;
    for (const auto& e : transcript) u += e.usage;
    return u;
}

namespace {

exec::ExecutionTrace rejected(const std::string& plan_name, const std::string& why) {
    exec::ExecutionTrace t;
    exec::ErrorTrace e;
    e.plan_name = plan_name;
    e.feedback_message = why;
    e.kind = exec::FailureKind::Rejected;
    t.failure = std::move(e);
    return t;
}

std::string one_line(std::string s) {
    for (char& c : s) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

}  // namespace

EpisodeResult run_episode(const TaskSpec& task, model::ModelBackend& backend, const EpisodeOptions& opts) {
    if (task.kind != TaskKind::Embodied) throw std::invalid_argument("run_episode needs an embodied task");
    const PromptFormat fmt = opts.prompt.format;
    const TaskPrompt tp = build_task_prompt(task.vocab, task.objects, task.examples, task.id, opts.prompt);

    EpisodeResult result;
    result.final_state = task.world;
    result.untranslated_comments = tp.untranslated;

    // The prompt is kept as body + header so a note can go just above the header.
    std::string body = tp.text().substr(0, tp.text().size() - tp.header.size() - 1);
    std::string header = tp.header;
    std::string plan_name = initial_plan_name(task.id);
    std::string note;

    model::CallContext ctx{opts.episode_id.empty() ? task.id : opts.episode_id, task.id, 0};
    for (std::size_t attempt = 0; attempt <= opts.budget; ++attempt) {
        const std::string prompt = body + note + header + "\n";
        ctx.call_index = attempt;
        model::Completion c;
        try {
            c = backend.complete(prompt, ctx);
        } catch (const model::ModelError& e) {
            result.aborted = e.what();
            break;
        }
        result.transcript.push_back({prompt, c.text, c.usage, c.usage_source});

        dsl::PlanAst plan;
        std::string problem;
        try {
            plan = fmt == PromptFormat::Code ? dsl::parse_completion(c.text, header) : parse_nl_completion(c.text, header);
            if (plan.name != plan_name) problem = "expected plan " + plan_name + ", got " + plan.name;
        } catch (const dsl::ParseError& e) {
            problem = std::string("parse error: ") + e.what();
        }
        if (problem.empty()) {
            auto report = dsl::validate_plan(plan, task.vocab);
            if (!report.ok()) problem = "invalid plan: " + report.summary();
        }
        if (!problem.empty()) {
            result.traces.push_back(rejected(plan_name, problem));
            note = (fmt == PromptFormat::Code ? "# Previous completion rejected: " : "Previous answer rejected: ") +
                   one_line(problem) + "\n";
            continue;
        }
        if (!opts.prompt.asserts) plan = strip_assertions(plan);

        exec::ExecutionTrace trace;
        try {
            std::tie(result.final_state, trace) = exec::execute(plan, result.final_state, opts.limits);
        } catch (const world::UnknownObject& e) {
            trace = rejected(plan_name, e.what());
        }
        const bool done = trace.completed;
        std::optional<exec::ErrorTrace> failure = trace.failure;
        result.traces.push_back(std::move(trace));
        if (done) break;

        const std::string next = updated_plan_name(task.id);
        const std::string block = fmt == PromptFormat::Code ? exec::serialize_error_trace(*failure, next)
                                                            : serialize_error_trace_nl(*failure, next);
        const std::string full = replan_prompt(tp, block);
        header = plan_header(fmt, next);
        body = full.substr(0, full.size() - header.size() - 1);
        plan_name = next;
        note.clear();
    }
    result.replans_used = result.traces.empty() ? 0 : result.traces.size() - 1;
    const bool trace_ok = !result.traces.empty() && result.traces.back().completed;
    result.score = world::score_goals(result.final_state, trace_ok, task.goals);
    return result;
}

}  // namespace codeplan::replan
