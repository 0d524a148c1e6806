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

#include "codeplan/dsl/validate.hpp"

#include <set>
#include <sstream>

#include "codeplan/dsl/render.hpp"

namespace codeplan::dsl {

std::string_view to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::UnknownAction: return "UnknownAction";
        case ViolationKind::ArityMismatch: return "ArityMismatch";
        case ViolationKind::ArgumentKind: return "ArgumentKind";
        case ViolationKind::UndeclaredObject: return "UndeclaredObject";
        case ViolationKind::UnboundVariable: return "UnboundVariable";
    }
    return "?";
}

std::size_t ValidationReport::count(ViolationKind k) const {
    std::size_t n = 0;
    for (const auto& v : violations) n += v.kind == k;
    return n;
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) out << "; ";
        out << "line " << violations[i].line << ": " << to_string(violations[i].kind) << " "
            << violations[i].detail;
    }
    return out.str();
}

namespace {

class Validator {
public:
    Validator(const Vocabulary& vocab, ValidationReport& report) : vocab_(vocab), report_(report) {}

    void block(const Block& b) {
        for (const auto& st : b) statement(st);
    }

private:
    void add(ViolationKind k, int line, std::string detail) {
        report_.violations.push_back({k, line, std::move(detail)});
    }

    void var(const std::string& name, int line) {
        if (!bound_.count(name)) add(ViolationKind::UnboundVariable, line, name);
    }

    void call(const ActionCall& c, int line) {
        const auto* sig = vocab_.find_action(c.name);
        if (!sig) {
            add(ViolationKind::UnknownAction, line, c.name);
            return;
        }
        if (c.args.size() != sig->arity()) {
            add(ViolationKind::ArityMismatch, line,
                render_call(c) + " expects " + std::to_string(sig->arity()));
            return;
        }
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            const Operand& o = c.args[i].value;
            if (const auto* v = std::get_if<VarRef>(&o)) {
                var(v->name, line);
                continue;
            }
            const auto& lit = std::get<Literal>(o);
            switch (sig->args[i]) {
                case ArgKind::Object:
                    if (!lit.is_string()) {
                        add(ViolationKind::ArgumentKind, line, render_call(c));
                    } else if (!vocab_.has_object(std::get<std::string>(lit.value))) {
                        add(ViolationKind::UndeclaredObject, line, std::get<std::string>(lit.value));
                    }
                    break;
                case ArgKind::Text:
                    if (!lit.is_string()) add(ViolationKind::ArgumentKind, line, render_call(c));
                    break;
                case ArgKind::Integer:
                    if (lit.is_string()) add(ViolationKind::ArgumentKind, line, render_call(c));
                    break;
                case ArgKind::Any:
                    break;
            }
        }
    }

    void expr(const Expr& e, int line) {
        if (const auto* v = std::get_if<VarRef>(&e.base)) var(v->name, line);
        else if (const auto* c = std::get_if<ActionCall>(&e.base)) call(*c, line);
    }

    void predicate(const Predicate& p, int line) {
        if (p.relation == Relation::Contains) return;
        if (!vocab_.has_object(p.subject)) add(ViolationKind::UndeclaredObject, line, p.subject);
    }

    void condition(const Condition& c, int line) {
        if (const auto* p = std::get_if<Predicate>(&c.test)) {
            predicate(*p, line);
            return;
        }
        const auto& f = std::get<FlagRef>(c.test);
        if (f.name != kLoopBudgetFlag) var(f.name, line);
    }

    void statement(const Statement& st) {
        const int line = st.line;
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, ActionCall>) {
                    call(node, line);
                } else if constexpr (std::is_same_v<T, AssertRecover>) {
                    predicate(node.predicate, line);
                    block(node.recovery);
                } else if constexpr (std::is_same_v<T, Loop>) {
                    predicate(node.guard, line);
                    block(node.body);
                    if (node.break_when) condition(*node.break_when, line);
                } else if constexpr (std::is_same_v<T, Conditional>) {
                    condition(node.condition, line);
                    block(node.then_block);
                    block(node.else_block);
                } else if constexpr (std::is_same_v<T, Binding>) {
                    expr(node.value, line);
                    bound_.insert(node.target);
                } else if constexpr (std::is_same_v<T, Return>) {
                    expr(node.value, line);
                }
            },
            st.node);
    }

    const Vocabulary& vocab_;
    ValidationReport& report_;
    std::set<std::string> bound_;
};

}  // namespace

ValidationReport validate_plan(const PlanAst& plan, const Vocabulary& vocab) {
    ValidationReport report;
    Validator(vocab, report).block(plan.body);
    return report;
}

}  // namespace codeplan::dsl
