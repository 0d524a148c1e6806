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
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codeplan/agents/tool_call.hpp"
#include "codeplan/agents/tool_registry.hpp"
#include "codeplan/dsl/plan_ast.hpp"
#include "codeplan/exec/executor.hpp"

namespace codeplan::agents {

using Bindings = std::map<std::string, Value>;

// A literal or a variable reference, already matched to a parameter.
struct ArgSource {
    std::string param;
    bool is_var = false;
    Value literal;
    std::string var;

    bool operator==(const ArgSource&) const = default;
};

struct CallSpec {
    std::string tool;
    std::vector<ArgSource> args;  // schema order

    bool operator==(const CallSpec&) const = default;
};

// Loop or branch test: a predicate tool call or a flag.
struct Guard {
    std::optional<CallSpec> probe;
    std::string flag;  // builtin sentinel or a bound variable
    bool negated = false;

    bool operator==(const Guard&) const = default;
};

enum class CodeActKind { Binding, ToolInvocation, Loop, Conditional, FinalAnswer };

std::string_view to_string(CodeActKind k);

struct CodeActStep {
    CodeActKind kind = CodeActKind::Binding;
    std::optional<std::string> target;
    std::optional<CallSpec> call;      // value comes from a tool call
    std::optional<ArgSource> source;   // otherwise from a literal or variable
    std::vector<dsl::PathElem> path;   // `[0]['url']` applied to the value
    std::optional<Guard> guard;
    std::optional<Guard> break_when;
    bool assertion = false;  // conditional from assert/else: re-checked after the branch
    std::vector<CodeActStep> body;
    std::vector<CodeActStep> else_body;
    int line = 0;

    bool operator==(const CodeActStep& o) const {
        return kind == o.kind && target == o.target && call == o.call && source == o.source && path == o.path &&
               guard == o.guard && break_when == o.break_when && assertion == o.assertion && body == o.body &&
               else_body == o.else_body;
    }
};

enum class LoweringErrorKind { UnknownTool, ArityMismatch, UnboundVariable };

std::string_view to_string(LoweringErrorKind k);

class LoweringError : public std::runtime_error {
public:
    LoweringError(LoweringErrorKind kind, int line, const std::string& detail);
    LoweringErrorKind kind() const noexcept { return kind_; }
    int line() const noexcept { return line_; }

private:
    LoweringErrorKind kind_;
    int line_;
};

// Turns a plan into interpretable steps. Names in `bound` count as already
// bound (carried over from an earlier plan). Comments are dropped. Argument
// kinds of literals are checked here; variables are checked when run.
std::vector<CodeActStep> lower_plan_to_codeact(const dsl::PlanAst& plan, const ToolRegistry& registry,
                                               const std::set<std::string>& bound = {});

std::size_t count_steps(const std::vector<CodeActStep>& steps);  // nested steps included

// One line per step in call syntax, keyword arguments in schema order.
std::string render_codeact(const std::vector<CodeActStep>& steps);

struct InvocationRecord {
    ToolCall call;
    bool ok = true;
    bool memoized = false;  // served from the pure-tool memo
    Value result;
    std::string error;
};

struct ErrorFeedback {
    std::string error_message;
    std::optional<ToolCall> failing_call;
    Bindings bindings;  // snapshot at the failure
    Value tool_state;
    std::string agent_id;
    std::size_t timestamp = 0;
    int line = 0;
    bool limit_exceeded = false;
};

// Results of pure tools keyed by their wire encoding. Shared across the
// plans of one episode so a replan does not re-run a finished call.
class ToolMemo {
public:
    const Value* find(const std::string& key) const;
    void put(const std::string& key, Value v) { memo_[key] = std::move(v); }
    std::size_t size() const { return memo_.size(); }

private:
    std::map<std::string, Value> memo_;
};

struct CodeActResult {
    Bindings bindings;
    std::optional<Value> answer;  // from final_answer
    std::optional<std::string> last_bound;
    std::optional<ErrorFeedback> error;
    std::vector<InvocationRecord> invocations;
    std::size_t steps_run = 0;
};

inline constexpr const char* kToolCallerId = "tool_caller";
inline constexpr const char* kBrowserAgentId = "web_browser_agent";

// Runs steps in order over `initial` bindings. A tool error, a bad
// extraction, a failed assertion or an exhausted budget stops the run and
// fills `error`; bindings made before the stop are kept.
CodeActResult run_codeact(const std::vector<CodeActStep>& steps, const ToolRegistry& registry, ToolSession& session,
                          const exec::ExecLimits& limits = {}, Bindings initial = {}, ToolMemo* memo = nullptr);

// Text of a value as an answer: strings as is, lists joined by "; ".
std::string value_text(const Value& v);

}  // namespace codeplan::agents
