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

#include "codeplan/exec/executor.hpp"

#include "codeplan/dsl/render.hpp"
#include "codeplan/dsl/validate.hpp"

namespace codeplan::exec {

namespace {

class Runner {
public:
    Runner(const dsl::PlanAst& plan, world::WorldState state, const ExecLimits& limits)
        : plan_(plan), state_(std::move(state)), limits_(limits) {}

    std::pair<world::WorldState, ExecutionTrace> run() {
        run_block(plan_.body, false);
        trace_.completed = !trace_.failure.has_value();
        return {std::move(state_), std::move(trace_)};
    }

private:
    // Returns false when execution must stop (failure or final_answer).
    bool run_block(const dsl::Block& block, bool in_recovery) {
        for (const auto& st : block) {
            if (!run_statement(st, in_recovery)) return false;
        }
        return true;
    }

    bool charge(const dsl::Statement& st) {
        if (++steps_ > limits_.max_steps) {
            fail(FailureKind::LimitExceeded, dsl::render_statement_head(st),
                 "step budget of " + std::to_string(limits_.max_steps) + " exceeded", {});
            return false;
        }
        return true;
    }

    void fail(FailureKind kind, std::string step, std::string message, std::vector<std::string> env) {
        ErrorTrace t;
        t.plan_name = plan_.name;
        t.executed_prefix = prefix_;
        t.error_step = std::move(step);
        t.feedback_message = std::move(message);
        t.environmental_information = std::move(env);
        t.items_in_hand = state_.held;
        t.kind = kind;
        trace_.failure = std::move(t);
    }

    std::optional<std::string> resolve(const dsl::Operand& o) const {
        if (const auto* l = std::get_if<dsl::Literal>(&o)) {
            if (const auto* s = std::get_if<std::string>(&l->value)) return *s;
            return std::to_string(std::get<std::int64_t>(l->value));
        }
        auto it = env_.find(std::get<dsl::VarRef>(o).name);
        if (it == env_.end()) return std::nullopt;
        return it->second;
    }

    bool run_action(const dsl::Statement& st, const dsl::ActionCall& call, bool in_recovery) {
        world::GroundAction ga;
        ga.name = call.name;
        for (const auto& a : call.args) {
            auto v = resolve(a.value);
            if (!v) {
                fail(FailureKind::Unsupported, dsl::render_call(call),
                     "unbound variable in " + dsl::render_call(call), {});
                return false;
            }
            ga.args.push_back(std::move(*v));
        }
        if (!world::is_world_action(ga.name) || ga.args.size() != 1) {
            fail(FailureKind::Unsupported, dsl::render_call(call), "unsupported action " + ga.name, {});
            return false;
        }
        ++trace_.attempted;
        auto [next, outcome] = world::apply_action(state_, ga);
        StepRecord rec{st, StepKind::Action, outcome.ok, in_recovery, outcome};
        trace_.steps.push_back(std::move(rec));
        if (!outcome.ok) {
            fail(FailureKind::ActionFailed, dsl::render_call(call), outcome.feedback_message,
                 outcome.observations);
            return false;
        }
        ++trace_.succeeded;
        state_ = std::move(next);
        prefix_.push_back(st);
        return true;
    }

    bool eval(const dsl::Predicate& p) const { return world::eval_predicate(state_, p); }

    std::optional<bool> eval_condition(const dsl::Condition& c, std::size_t iterations) const {
        if (const auto* p = std::get_if<dsl::Predicate>(&c.test)) {
            if (p->relation == dsl::Relation::Contains) return std::nullopt;
            return eval(*p);
        }
        const auto& f = std::get<dsl::FlagRef>(c.test);
        bool v;
        if (f.name == dsl::kLoopBudgetFlag) {
            v = iterations >= limits_.max_loop_iters;
        } else {
            auto it = env_.find(f.name);
            if (it == env_.end()) return std::nullopt;
            v = !it->second.empty() && it->second != "False" && it->second != "0";
        }
        return f.negated ? !v : v;
    }

    std::string assertion_message(const dsl::Predicate& p) const {
        std::string rel(dsl::to_string(p.relation));
        return std::string(p.negated ? "unexpectedly " : "not ") + rel + " to <" + p.subject + "> when [ASSERT]";
    }

    bool run_statement(const dsl::Statement& st, bool in_recovery) {
        if (st.is<dsl::Comment>()) {
            trace_.steps.push_back({st, StepKind::Comment, true, in_recovery, {}});
            prefix_.push_back(st);
            return true;
        }
        if (!charge(st)) return false;

        if (const auto* call = st.as<dsl::ActionCall>()) return run_action(st, *call, in_recovery);

        if (const auto* ar = st.as<dsl::AssertRecover>()) {
            const auto& pred = ar->predicate;
            if (pred.relation == dsl::Relation::Contains) {
                fail(FailureKind::Unsupported, dsl::render_statement_head(st), "text probe in a world plan", {});
                return false;
            }
            bool holds = eval(pred);
            if (!holds) {
                ++trace_.recoveries;
                if (!run_block(ar->recovery, true)) return false;
                holds = eval(pred);
            }
            trace_.steps.push_back({st, StepKind::Assertion, holds, in_recovery, {}});
            if (!holds) {
                fail(FailureKind::AssertionFailed, dsl::render_statement_head(st), assertion_message(pred),
                     world::observe(state_, pred.subject));
                return false;
            }
            return true;
        }

        if (const auto* loop = st.as<dsl::Loop>()) {
            if (loop->guard.relation == dsl::Relation::Contains) {
                fail(FailureKind::Unsupported, dsl::render_statement_head(st), "text probe in a world plan", {});
                return false;
            }
            std::size_t iterations = 0;
            while (eval(loop->guard)) {
                if (iterations >= limits_.max_loop_iters) {
                    fail(FailureKind::LimitExceeded, dsl::render_statement_head(st),
                         "loop budget of " + std::to_string(limits_.max_loop_iters) + " exceeded", {});
                    return false;
                }
                if (!run_block(loop->body, in_recovery)) return false;
                ++iterations;
                if (loop->break_when) {
                    auto b = eval_condition(*loop->break_when, iterations);
                    if (!b) {
                        fail(FailureKind::Unsupported, dsl::render_statement_head(st), "unknown break condition", {});
                        return false;
                    }
                    if (*b) break;
                }
            }
            return true;
        }

        if (const auto* cond = st.as<dsl::Conditional>()) {
            auto v = eval_condition(cond->condition, 0);
            if (!v) {
                fail(FailureKind::Unsupported, dsl::render_statement_head(st), "unknown condition", {});
                return false;
            }
            return run_block(*v ? cond->then_block : cond->else_block, in_recovery);
        }

        if (const auto* b = st.as<dsl::Binding>()) {
            const auto* operand_base = std::get_if<dsl::Literal>(&b->value.base);
            const auto* var_base = std::get_if<dsl::VarRef>(&b->value.base);
            if ((!operand_base && !var_base) || !b->value.path.empty()) {
                fail(FailureKind::Unsupported, dsl::render_statement_head(st), "unsupported expression", {});
                return false;
            }
            auto v = operand_base ? resolve(*operand_base) : resolve(*var_base);
            if (!v) {
                fail(FailureKind::Unsupported, dsl::render_statement_head(st), "unbound variable", {});
                return false;
            }
            env_[b->target] = *v;
            trace_.steps.push_back({st, StepKind::Binding, true, in_recovery, {}});
            return true;
        }

        trace_.steps.push_back({st, StepKind::Return, true, in_recovery, {}});
        return false;  // final_answer ends the plan
    }

    const dsl::PlanAst& plan_;
    world::WorldState state_;
    ExecLimits limits_;
    ExecutionTrace trace_;
    std::vector<dsl::Statement> prefix_;
    std::map<std::string, std::string> env_;
    std::size_t steps_ = 0;
};

}  // namespace

std::pair<world::WorldState, ExecutionTrace> execute(const dsl::PlanAst& plan, const world::WorldState& state,
                                                     const ExecLimits& limits) {
    return Runner(plan, state, limits).run();
}

}  // namespace codeplan::exec
