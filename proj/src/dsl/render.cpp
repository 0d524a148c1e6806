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

#include "codeplan/dsl/render.hpp"

#include <sstream>

#include "codeplan/dsl/lexer.hpp"

namespace codeplan::dsl {

namespace {

std::string indent(int level) { return std::string(static_cast<std::size_t>(level * kIndentWidth), ' '); }

std::string render_literal(const Literal& l) {
    if (const auto* s = std::get_if<std::string>(&l.value)) return quote_string(*s, l.quote);
    return std::to_string(std::get<std::int64_t>(l.value));
}

std::string comment_text(const Comment& c, const CommentStyle& style) {
    if (style.mode == CommentStyle::Mode::Translate) {
        auto it = style.table->find(c.text);
        if (it == style.table->end()) throw MissingTranslation(c.text);
        return it->second;
    }
    return c.text;
}

bool is_simple(const Statement& st) {
    return st.is<ActionCall>() || st.is<Binding>() || st.is<Return>();
}

void emit_block(std::ostringstream& out, const Block& block, int level, const CommentStyle& style);

void emit_statement(std::ostringstream& out, const Statement& st, int level,
                    const CommentStyle& style) {
    const std::string pad = indent(level);
    if (const auto* c = st.as<Comment>()) {
        if (style.mode == CommentStyle::Mode::Strip) return;
        std::string text = comment_text(*c, style);
        out << pad << (text.empty() ? "#" : "# " + text) << '\n';
        return;
    }
    if (const auto* a = st.as<AssertRecover>()) {
        out << pad << "assert(" << render_predicate(a->predicate) << ")\n";
        if (a->recovery.size() == 1 && is_simple(a->recovery.front())) {
            out << indent(level + 1) << "else: " << render_statement_head(a->recovery.front()) << '\n';
        } else if (!a->recovery.empty()) {
            out << indent(level + 1) << "else:\n";
            emit_block(out, a->recovery, level + 2, style);
        }
        return;
    }
    if (const auto* l = st.as<Loop>()) {
        out << pad << "while " << render_predicate(l->guard) << ":\n";
        emit_block(out, l->body, level + 1, style);
        if (l->break_when) {
            out << indent(level + 1) << "if " << render_condition(*l->break_when) << ": break\n";
        }
        return;
    }
    if (const auto* c = st.as<Conditional>()) {
        out << pad << "if " << render_condition(c->condition) << ":\n";
        emit_block(out, c->then_block, level + 1, style);
        if (!c->else_block.empty()) {
            out << pad << "else:\n";
            emit_block(out, c->else_block, level + 1, style);
        }
        return;
    }
    out << pad << render_statement_head(st) << '\n';
}

void emit_block(std::ostringstream& out, const Block& block, int level, const CommentStyle& style) {
    for (const auto& st : block) emit_statement(out, st, level, style);
}

}  // namespace

std::string render_operand(const Operand& o) {
    if (const auto* l = std::get_if<Literal>(&o)) return render_literal(*l);
    return std::get<VarRef>(o).name;
}

std::string render_call(const ActionCall& call) {
    std::string out = call.name + "(";
    for (std::size_t i = 0; i < call.args.size(); ++i) {
        if (i) out += ", ";
        const auto& a = call.args[i];
        if (!a.keyword.empty()) out += a.keyword + "=";
        out += render_operand(a.value);
    }
    out += ")";
    return out;
}

std::string render_expr(const Expr& e) {
    std::string out;
    if (const auto* l = std::get_if<Literal>(&e.base)) out = render_literal(*l);
    else if (const auto* v = std::get_if<VarRef>(&e.base)) out = v->name;
    else out = render_call(std::get<ActionCall>(e.base));
    for (const auto& p : e.path) {
        out += '[';
        if (const auto* i = std::get_if<std::int64_t>(&p.key)) out += std::to_string(*i);
        else out += quote_string(std::get<std::string>(p.key), p.quote);
        out += ']';
    }
    return out;
}

std::string render_predicate(const Predicate& p) {
    std::string out = p.negated ? "not " : "";
    const std::string rel(to_string(p.relation));
    switch (p.form) {
        case PredicateForm::To:
            out += quote_string(rel, p.quote) + " to " + quote_string(p.subject, p.quote);
            break;
        case PredicateForm::Call:
            out += rel + "(" + quote_string(p.subject, p.quote) + ")";
            break;
        case PredicateForm::Method:
            out += p.owner + "." + rel + "(" + quote_string(p.subject, p.quote) + ")";
            break;
    }
    return out;
}

std::string render_condition(const Condition& c) {
    if (const auto* p = std::get_if<Predicate>(&c.test)) return render_predicate(*p);
    const auto& f = std::get<FlagRef>(c.test);
    return (f.negated ? "not " : "") + f.name;
}

std::string render_statement_head(const Statement& st) {
    if (const auto* c = st.as<ActionCall>()) return render_call(*c);
    if (const auto* b = st.as<Binding>()) return b->target + " = " + render_expr(b->value);
    if (const auto* r = st.as<Return>()) return "final_answer(" + render_expr(r->value) + ")";
    if (const auto* c = st.as<Comment>()) return c->text.empty() ? "#" : "# " + c->text;
    if (const auto* a = st.as<AssertRecover>()) return "assert(" + render_predicate(a->predicate) + ")";
    if (const auto* l = st.as<Loop>()) return "while " + render_predicate(l->guard) + ":";
    const auto& cond = std::get<Conditional>(st.node);
    return "if " + render_condition(cond.condition) + ":";
}

std::string render_block(const Block& block, int level, const CommentStyle& style) {
    std::ostringstream out;
    emit_block(out, block, level, style);
    return out.str();
}

std::string render_plan(const PlanAst& plan, const CommentStyle& style) {
    std::ostringstream out;
    out << "def " << plan.name << "():\n";
    emit_block(out, plan.body, 1, style);
    return out.str();
}

}  // namespace codeplan::dsl
