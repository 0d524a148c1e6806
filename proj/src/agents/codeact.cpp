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

#include "codeplan/agents/codeact.hpp"

#include "codeplan/dsl/validate.hpp"
#include "codeplan/tools/browse.hpp"

namespace codeplan::agents {

std::string_view to_string(CodeActKind k) {
    switch (k) {
        case CodeActKind::Binding: return "binding";
        case CodeActKind::ToolInvocation: return "tool_invocation";
        case CodeActKind::Loop: return "loop";
        case CodeActKind::Conditional: return "conditional";
        case CodeActKind::FinalAnswer: return "final_answer";
    }
    return "?";
}

std::string_view to_string(LoweringErrorKind k) {
    switch (k) {
        case LoweringErrorKind::UnknownTool: return "UnknownTool";
        case LoweringErrorKind::ArityMismatch: return "ArityMismatch";
        case LoweringErrorKind::UnboundVariable: return "UnboundVariable";
    }
    return "?";
}

LoweringError::LoweringError(LoweringErrorKind kind, int line, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at line " + std::to_string(line) + ": " + detail),
      kind_(kind),
      line_(line) {}

namespace {

Value literal_value(const dsl::Literal& l) {
    if (const auto* s = std::get_if<std::string>(&l.value)) return Value(*s);
    return Value(std::get<std::int64_t>(l.value));
}

class Lowerer {
public:
    Lowerer(const ToolRegistry& reg, std::set<std::string> bound) : reg_(reg), bound_(std::move(bound)) {}

    std::vector<CodeActStep> block(const dsl::Block& b) {
        std::vector<CodeActStep> out;
        for (const auto& st : b) {
            if (st.is<dsl::Comment>()) continue;
            out.push_back(statement(st));
        }
        return out;
    }

private:
    void use(const std::string& var, int line) const {
        if (!bound_.count(var)) throw LoweringError(LoweringErrorKind::UnboundVariable, line, var);
    }

    ArgSource arg(const ParamSpec& p, const dsl::Operand& o, const std::string& tool, int line) const {
        ArgSource a;
        a.param = p.name;
        if (const auto* v = std::get_if<dsl::VarRef>(&o)) {
            use(v->name, line);
            a.is_var = true;
            a.var = v->name;
            return a;
        }
        const auto& lit = std::get<dsl::Literal>(o);
        const bool want_text = p.kind == ParamKind::Text;
        if (lit.is_string() != want_text || p.kind == ParamKind::Boolean) {
            throw LoweringError(LoweringErrorKind::ArityMismatch, line,
                                "argument " + p.name + " of " + tool + " expects " + std::string(to_string(p.kind)));
        }
        a.literal = literal_value(lit);
        return a;
    }

    CallSpec call(const dsl::ActionCall& c, int line) const {
        const ToolSchema* s = reg_.find(c.name);
        if (!s) throw LoweringError(LoweringErrorKind::UnknownTool, line, c.name);
        std::vector<std::optional<ArgSource>> slots(s->params.size());
        std::size_t positional = 0;
        bool seen_keyword = false;
        for (const auto& a : c.args) {
            std::size_t idx;
            if (a.keyword.empty()) {
                if (seen_keyword || positional >= s->params.size()) {
                    throw LoweringError(LoweringErrorKind::ArityMismatch, line,
                                        c.name + " takes " + std::to_string(s->params.size()) + " argument(s)");
                }
                idx = positional++;
            } else {
                seen_keyword = true;
                const ParamSpec* p = s->param(a.keyword);
                if (!p) throw LoweringError(LoweringErrorKind::ArityMismatch, line, c.name + " has no parameter " + a.keyword);
                idx = static_cast<std::size_t>(p - s->params.data());
            }
            if (slots[idx]) {
                throw LoweringError(LoweringErrorKind::ArityMismatch, line,
                                    "argument " + s->params[idx].name + " of " + c.name + " given twice");
            }
            slots[idx] = arg(s->params[idx], a.value, c.name, line);
        }
        CallSpec out{c.name, {}};
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (!slots[i]) {
                throw LoweringError(LoweringErrorKind::ArityMismatch, line,
                                    c.name + " is missing argument " + s->params[i].name);
            }
            out.args.push_back(std::move(*slots[i]));
        }
        return out;
    }

    Guard predicate_guard(const dsl::Predicate& p, int line) const {
        if (p.relation != dsl::Relation::Contains || !reg_.contains(kContainsProbe)) {
            throw LoweringError(LoweringErrorKind::UnknownTool, line,
                                p.relation == dsl::Relation::Contains ? kContainsProbe
                                                                      : std::string(dsl::to_string(p.relation)));
        }
        Guard g;
        g.probe = CallSpec{kContainsProbe, {ArgSource{"text", false, Value(p.subject), ""}}};
        g.negated = p.negated;
        return g;
    }

    Guard condition_guard(const dsl::Condition& c, int line) const {
        if (const auto* p = std::get_if<dsl::Predicate>(&c.test)) return predicate_guard(*p, line);
        const auto& f = std::get<dsl::FlagRef>(c.test);
        if (f.name != dsl::kLoopBudgetFlag) use(f.name, line);
        Guard g;
        g.flag = f.name;
        g.negated = f.negated;
        return g;
    }

    // Fills call/source/path of a value-producing step.
    void value(CodeActStep& step, const dsl::Expr& e, int line) const {
        step.path = e.path;
        if (const auto* c = std::get_if<dsl::ActionCall>(&e.base)) {
            step.call = call(*c, line);
            return;
        }
        ArgSource src;
        if (const auto* v = std::get_if<dsl::VarRef>(&e.base)) {
            use(v->name, line);
            src.is_var = true;
            src.var = v->name;
        } else {
            src.literal = literal_value(std::get<dsl::Literal>(e.base));
        }
        step.source = std::move(src);
    }

    CodeActStep statement(const dsl::Statement& st) {
        CodeActStep s;
        s.line = st.line;
        if (const auto* c = st.as<dsl::ActionCall>()) {
            s.kind = CodeActKind::ToolInvocation;
            s.call = call(*c, st.line);
        } else if (const auto* b = st.as<dsl::Binding>()) {
            value(s, b->value, st.line);
            s.kind = s.call ? CodeActKind::ToolInvocation : CodeActKind::Binding;
            s.target = b->target;
            bound_.insert(b->target);
        } else if (const auto* r = st.as<dsl::Return>()) {
            s.kind = CodeActKind::FinalAnswer;
            value(s, r->value, st.line);
        } else if (const auto* l = st.as<dsl::Loop>()) {
            s.kind = CodeActKind::Loop;
            s.guard = predicate_guard(l->guard, st.line);
            s.body = block(l->body);
            if (l->break_when) s.break_when = condition_guard(*l->break_when, st.line);
        } else if (const auto* c = st.as<dsl::Conditional>()) {
            s.kind = CodeActKind::Conditional;
            s.guard = condition_guard(c->condition, st.line);
            s.body = block(c->then_block);
            s.else_body = block(c->else_block);
        } else if (const auto* a = st.as<dsl::AssertRecover>()) {
            s.kind = CodeActKind::Conditional;
            s.assertion = true;
            s.guard = predicate_guard(a->predicate, st.line);
            s.body = block(a->recovery);
        }
        return s;
    }

    const ToolRegistry& reg_;
    std::set<std::string> bound_;
};

std::string render_arg(const ArgSource& a) { return a.is_var ? a.var : a.literal.dump(); }

std::string render_call(const CallSpec& c) {
    std::string out = c.tool + "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
        if (i) out += ", ";
        out += c.args[i].param + "=" + render_arg(c.args[i]);
    }
    return out + ")";
}

std::string render_path(const std::vector<dsl::PathElem>& path) {
    std::string out;
    for (const auto& p : path) {
        if (const auto* i = std::get_if<std::int64_t>(&p.key)) {
            out += "[" + std::to_string(*i) + "]";
        } else {
            out += "[" + Value(std::get<std::string>(p.key)).dump() + "]";
        }
    }
    return out;
}

std::string render_guard(const Guard& g) {
    std::string inner;
    if (g.probe) {
        inner = render_call(*g.probe);
    } else {
        inner = g.flag;
    }
    return (g.negated ? "not " : "") + inner;
}

void render_steps(const std::vector<CodeActStep>& steps, int level, std::string& out) {
    const std::string pad(static_cast<std::size_t>(level) * 4, ' ');
    for (const auto& s : steps) {
        switch (s.kind) {
            case CodeActKind::Binding:
            case CodeActKind::ToolInvocation:
            case CodeActKind::FinalAnswer: {
                std::string v = s.call ? render_call(*s.call) : render_arg(*s.source);
                v += render_path(s.path);
                if (s.kind == CodeActKind::FinalAnswer) {
                    out += pad + "final_answer(" + v + ")\n";
                } else {
                    out += pad + (s.target ? *s.target + " = " : "") + v + "\n";
                }
                break;
            }
            case CodeActKind::Loop:
                out += pad + "while " + render_guard(*s.guard) + ":\n";
                render_steps(s.body, level + 1, out);
                if (s.break_when) out += pad + "    if " + render_guard(*s.break_when) + ": break\n";
                break;
            case CodeActKind::Conditional:
                if (s.assertion) {
                    Guard neg = *s.guard;
                    neg.negated = !neg.negated;
                    out += pad + "if " + render_guard(neg) + ":\n";
                    render_steps(s.body, level + 1, out);
                    out += pad + "assert " + render_guard(*s.guard) + "\n";
                } else {
                    out += pad + "if " + render_guard(*s.guard) + ":\n";
                    render_steps(s.body, level + 1, out);
                    if (!s.else_body.empty()) {
                        out += pad + "else:\n";
                        render_steps(s.else_body, level + 1, out);
                    }
                }
                break;
        }
    }
}

class StopRun {};  // unwinds the interpreter after `error` or `answer` is set

class Interpreter {
public:
    Interpreter(const ToolRegistry& reg, ToolSession& session, const exec::ExecLimits& limits, Bindings initial,
                ToolMemo* memo)
        : reg_(reg), session_(session), limits_(limits), memo_(memo) {
        result_.bindings = std::move(initial);
    }

    CodeActResult run(const std::vector<CodeActStep>& steps) {
        try {
            block(steps, std::nullopt);
        } catch (const StopRun&) {
        }
        return std::move(result_);
    }

private:
    [[noreturn]] void fail(std::string message, int line, std::optional<ToolCall> call = std::nullopt,
                           bool from_tool = false, bool limit = false) {
        ErrorFeedback fb;
        fb.error_message = std::move(message);
        fb.failing_call = std::move(call);
        fb.bindings = result_.bindings;
        fb.tool_state = session_.state();
        fb.agent_id = from_tool ? kBrowserAgentId : kToolCallerId;
        fb.timestamp = result_.invocations.size();
        fb.line = line;
        fb.limit_exceeded = limit;
        result_.error = std::move(fb);
        throw StopRun{};
    }

    Value lookup(const std::string& var, int line) {
        auto it = result_.bindings.find(var);
        if (it == result_.bindings.end()) fail("name '" + var + "' is not bound", line);
        return it->second;
    }

    Value coerce(const Value& v, const ParamSpec& p, const std::string& tool, int line) {
        if (p.kind == ParamKind::Text) {
            if (v.is_string()) return v;
            if (v.is_array()) {
                std::vector<std::string> parts;
                bool all_text = true;
                for (const auto& e : v) {
                    if (!e.is_string()) {
                        all_text = false;
                        break;
                    }
                    parts.push_back(e.get<std::string>());
                }
                if (all_text) return Value(tools::join_paragraphs(parts));
            }
        } else if (p.kind == ParamKind::Integer && v.is_number_integer()) {
            return v;
        } else if (p.kind == ParamKind::Boolean && v.is_boolean()) {
            return v;
        }
        fail("argument " + p.name + " of " + tool + " expects " + std::string(to_string(p.kind)) + ", got " +
                 v.type_name(),
             line);
    }

    Value invoke(const CallSpec& c, int line) {
        const ToolSchema* schema = reg_.find(c.tool);
        ToolCall call{c.tool, Value::object()};
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            const auto& a = c.args[i];
            Value v = a.is_var ? lookup(a.var, line) : a.literal;
            call.args[a.param] = coerce(v, schema->params[i], c.tool, line);
        }
        InvocationRecord rec{call, true, false, {}, {}};
        const std::string key = encode_tool_call(call);
        if (schema->pure && memo_) {
            if (const Value* hit = memo_->find(key)) {
                rec.memoized = true;
                rec.result = *hit;
                result_.invocations.push_back(rec);
                return *hit;
            }
        }
        try {
            rec.result = reg_.invoke(session_, call);
        } catch (const tools::ToolError& e) {
            rec.ok = false;
            rec.error = e.what();
            result_.invocations.push_back(rec);
            fail(e.what(), line, call, true);
        } catch (const std::invalid_argument& e) {
            rec.ok = false;
            rec.error = e.what();
            result_.invocations.push_back(rec);
            fail(e.what(), line, call);
        }
        if (schema->pure && memo_) memo_->put(key, rec.result);
        result_.invocations.push_back(rec);
        return rec.result;
    }

    Value extract(Value v, const std::vector<dsl::PathElem>& path, int line) {
        for (const auto& p : path) {
            if (const auto* i = std::get_if<std::int64_t>(&p.key)) {
                if (!v.is_array()) fail(std::string("cannot index a ") + v.type_name(), line);
                auto n = static_cast<std::int64_t>(v.size());
                std::int64_t idx = *i < 0 ? n + *i : *i;
                if (idx < 0 || idx >= n) fail("index " + std::to_string(*i) + " out of range", line);
                v = v[static_cast<std::size_t>(idx)];
            } else {
                const auto& k = std::get<std::string>(p.key);
                if (!v.is_object() || !v.contains(k)) fail("key '" + k + "' not found", line);
                v = v[k];
            }
        }
        return v;
    }

    static bool truthy(const Value& v) {
        if (v.is_boolean()) return v.get<bool>();
        if (v.is_string() || v.is_array() || v.is_object()) return !v.empty();
        if (v.is_number()) return v.get<double>() != 0.0;
        return false;
    }

    bool test(const Guard& g, std::optional<std::size_t> iterations, int line) {
        bool v;
        if (g.probe) {
            v = truthy(invoke(*g.probe, line));
        } else if (g.flag == dsl::kLoopBudgetFlag) {
            v = iterations && *iterations >= limits_.max_loop_iters;
        } else {
            v = truthy(lookup(g.flag, line));
        }
        return g.negated ? !v : v;
    }

    void charge(int line) {
        if (++result_.steps_run > limits_.max_steps) {
            fail("step budget of " + std::to_string(limits_.max_steps) + " exceeded", line, std::nullopt, false, true);
        }
    }

    void block(const std::vector<CodeActStep>& steps, std::optional<std::size_t> iterations) {
        for (const auto& s : steps) step(s, iterations);
    }

    void step(const CodeActStep& s, std::optional<std::size_t> iterations) {
        charge(s.line);
        switch (s.kind) {
            case CodeActKind::Binding:
            case CodeActKind::ToolInvocation:
            case CodeActKind::FinalAnswer: {
                Value v = s.call ? invoke(*s.call, s.line)
                                 : (s.source->is_var ? lookup(s.source->var, s.line) : s.source->literal);
                v = extract(std::move(v), s.path, s.line);
                if (s.kind == CodeActKind::FinalAnswer) {
                    result_.answer = std::move(v);
                    throw StopRun{};
                }
                if (s.target) {
                    result_.bindings[*s.target] = std::move(v);
                    result_.last_bound = *s.target;
                }
                return;
            }
            case CodeActKind::Loop: {
                std::size_t n = 0;
                while (test(*s.guard, n, s.line)) {
                    if (n >= limits_.max_loop_iters) {
                        fail("loop budget of " + std::to_string(limits_.max_loop_iters) + " exceeded", s.line,
                             std::nullopt, false, true);
                    }
                    block(s.body, n);
                    ++n;
                    if (s.break_when && test(*s.break_when, n, s.line)) break;
                }
                return;
            }
            case CodeActKind::Conditional: {
                bool holds = test(*s.guard, iterations, s.line);
                if (s.assertion) {
                    if (holds) return;
                    block(s.body, iterations);
                    if (!test(*s.guard, iterations, s.line)) fail("assertion failed: " + render_guard(*s.guard), s.line);
                    return;
                }
                block(holds ? s.body : s.else_body, iterations);
                return;
            }
        }
    }

    const ToolRegistry& reg_;
    ToolSession& session_;
    exec::ExecLimits limits_;
    ToolMemo* memo_;
    CodeActResult result_;
};

}  // namespace

std::vector<CodeActStep> lower_plan_to_codeact(const dsl::PlanAst& plan, const ToolRegistry& registry,
                                               const std::set<std::string>& bound) {
    return Lowerer(registry, bound).block(plan.body);
}

std::size_t count_steps(const std::vector<CodeActStep>& steps) {
    std::size_t n = 0;
    for (const auto& s : steps) n += 1 + count_steps(s.body) + count_steps(s.else_body);
    return n;
}

std::string render_codeact(const std::vector<CodeActStep>& steps) {
    std::string out;
    render_steps(steps, 0, out);
    return out;
}

const Value* ToolMemo::find(const std::string& key) const {
    auto it = memo_.find(key);
    return it == memo_.end() ? nullptr : &it->second;
}

CodeActResult run_codeact(const std::vector<CodeActStep>& steps, const ToolRegistry& registry, ToolSession& session,
                          const exec::ExecLimits& limits, Bindings initial, ToolMemo* memo) {
    return Interpreter(registry, session, limits, std::move(initial), memo).run(steps);
}

std::string value_text(const Value& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += "; ";
            out += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
        }
        return out;
    }
    return v.dump();
}

}  // namespace codeplan::agents
