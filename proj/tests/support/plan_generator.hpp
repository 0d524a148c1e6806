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

#include <random>
#include <string>
#include <vector>

#include "codeplan/dsl/parser.hpp"
#include "codeplan/dsl/plan_ast.hpp"

namespace codeplan::testing {

// Random statement trees covering every construct of the plan grammar,
// bounded so that every line stays within the nesting limit.
class PlanGenerator {
public:
    explicit PlanGenerator(unsigned seed) : rng_(seed) {}

    dsl::PlanAst plan() {
        dsl::PlanAst p;
        p.name = pick(kPlanNames) + "_" + std::to_string(uniform(0, 99));
        p.body = block(1, uniform(1, 6));
        return p;
    }

    dsl::Block block(int level, int n) {
        dsl::Block b;
        for (int i = 0; i < n; ++i) b.push_back(statement(level));
        return b;
    }

    dsl::Statement statement(int level) {
        const bool can_nest = level + 1 <= dsl::kMaxNestingDepth;
        int choice = uniform(0, can_nest ? 9 : 4);
        dsl::Statement st;
        switch (choice) {
            case 0:
            case 1: st.node = call(); break;
            case 2: st.node = dsl::Comment{comment_text()}; break;
            case 3: st.node = dsl::Binding{pick(kVars), expr()}; break;
            case 4: st.node = dsl::Return{expr()}; break;
            case 5:
            case 6: st.node = assertion(level); break;
            case 7: st.node = loop(level); break;
            default: st.node = conditional(level); break;
        }
        return st;
    }

    dsl::ActionCall call() {
        dsl::ActionCall c;
        c.name = pick(kCalls);
        int n = uniform(0, 3);
        for (int i = 0; i < n; ++i) {
            dsl::Argument a;
            if (uniform(0, 3) == 0) a.keyword = pick(kKeywords);
            a.value = operand();
            c.args.push_back(std::move(a));
        }
        return c;
    }

    dsl::Operand operand() {
        switch (uniform(0, 3)) {
            case 0: return dsl::VarRef{pick(kVars)};
            case 1: return dsl::Literal{static_cast<std::int64_t>(uniform(-50, 500)), '\''};
            default: return string_literal();
        }
    }

    dsl::Literal string_literal() {
        std::string s = pick(kWords);
        if (uniform(0, 2) == 0) s += " " + pick(kWords);
        if (uniform(0, 5) == 0) s += "'s \"q\"";
        if (uniform(0, 7) == 0) s += " (x) [y]";
        return dsl::Literal{s, uniform(0, 1) ? '\'' : '"'};
    }

    dsl::Expr expr() {
        dsl::Expr e;
        switch (uniform(0, 2)) {
            case 0: e.base = std::get<dsl::Literal>(uniform(0, 1) ? dsl::Operand{string_literal()}
                                                                 : dsl::Operand{dsl::Literal{std::int64_t{7}, '\''}});
                break;
            case 1: e.base = dsl::VarRef{pick(kVars)}; break;
            default: e.base = call(); break;
        }
        if (!std::holds_alternative<dsl::Literal>(e.base)) {
            int n = uniform(0, 2);
            for (int i = 0; i < n; ++i) {
                dsl::PathElem pe;
                if (uniform(0, 1)) pe.key = static_cast<std::int64_t>(uniform(0, 3));
                else {
                    pe.key = pick(kKeys);
                    pe.quote = uniform(0, 1) ? '\'' : '"';
                }
                e.path.push_back(std::move(pe));
            }
        }
        return e;
    }

    dsl::Predicate predicate() {
        dsl::Predicate p;
        static const std::vector<dsl::Relation> rels = {dsl::Relation::Close, dsl::Relation::Holding,
                                                        dsl::Relation::Visible, dsl::Relation::Contains};
        p.relation = rels[static_cast<std::size_t>(uniform(0, 3))];
        p.negated = uniform(0, 2) == 0;
        p.quote = uniform(0, 1) ? '\'' : '"';
        switch (uniform(0, 2)) {
            case 0: p.form = dsl::PredicateForm::To; break;
            case 1: p.form = dsl::PredicateForm::Call; break;
            default:
                p.form = dsl::PredicateForm::Method;
                p.owner = "TextInspectorTool";
        }
        p.subject = p.relation == dsl::Relation::Contains ? pick(kWords) + " " + pick(kWords) : pick(kObjects);
        return p;
    }

    dsl::Condition condition() {
        if (uniform(0, 2) == 0) return dsl::Condition{dsl::FlagRef{pick(kFlags), uniform(0, 1) == 1}};
        return dsl::Condition{predicate()};
    }

    dsl::AssertRecover assertion(int level) {
        dsl::AssertRecover a;
        a.predicate = predicate();
        int shape = uniform(0, 3);
        if (shape == 1) {
            a.recovery.push_back(simple());
        } else if (shape >= 2 && level + 2 <= dsl::kMaxNestingDepth) {
            a.recovery = block(level + 2, uniform(1, 3));
        }
        return a;
    }

    dsl::Loop loop(int level) {
        dsl::Loop l;
        l.guard = predicate();
        l.body = block(level + 1, uniform(1, 3));
        if (uniform(0, 1)) l.break_when = condition();
        return l;
    }

    dsl::Conditional conditional(int level) {
        dsl::Conditional c;
        c.condition = condition();
        c.then_block = block(level + 1, uniform(1, 3));
        if (uniform(0, 1)) c.else_block = block(level + 1, uniform(1, 2));
        return c;
    }

    dsl::Statement simple() {
        dsl::Statement st;
        switch (uniform(0, 2)) {
            case 0: st.node = call(); break;
            case 1: st.node = dsl::Binding{pick(kVars), expr()}; break;
            default: st.node = dsl::Return{expr()}; break;
        }
        return st;
    }

    std::string comment_text() {
        std::string s = "Step " + std::to_string(uniform(1, 9)) + ": " + pick(kWords);
        int extra = uniform(0, 3);
        for (int i = 0; i < extra; ++i) s += " " + pick(kWords);
        if (uniform(0, 6) == 0) s += " (see 'note')";
        if (uniform(0, 6) == 0) s = "步骤" + std::to_string(uniform(1, 9)) + "：找到沙发";
        return s;
    }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    const std::string& pick(const std::vector<std::string>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
    }

    std::mt19937& rng() { return rng_; }

    static inline const std::vector<std::string> kPlanNames = {"initial_plan", "updated_plan", "task",
                                                               "plan_for_chores"};
    static inline const std::vector<std::string> kCalls = {"walk", "find", "grab", "sit", "eat",
                                                           "VisitTool", "PageDownTool", "GoogleSearchTool",
                                                           "TextInspectorTool", "FinderTool"};
    static inline const std::vector<std::string> kVars = {"x", "doc", "item", "search_result", "paragraphs"};
    static inline const std::vector<std::string> kKeywords = {"keyword", "text", "focus", "count"};
    static inline const std::vector<std::string> kWords = {"sofa", "growth", "driver", "AI", "chip",
                                                           "market", "bread", "edge", "computing"};
    static inline const std::vector<std::string> kObjects = {"sofa", "bread", "tv", "kitchen", "livingroom"};
    static inline const std::vector<std::string> kKeys = {"url", "title", "text"};
    static inline const std::vector<std::string> kFlags = {"too_many_pages_scrolled", "done", "found"};

private:
    std::mt19937 rng_;
};

}  // namespace codeplan::testing
