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

#include "codeplan/replan/nl_format.hpp"

#include <regex>
#include <sstream>

#include "codeplan/dsl/parser.hpp"

namespace codeplan::replan {

namespace {

using dsl::ParseError;
using dsl::ParseErrorKind;

std::string arg_text(const dsl::Argument& a) {
    const auto* lit = std::get_if<dsl::Literal>(&a.value);
    if (!a.keyword.empty() || !lit || !lit->is_string() || !dsl::is_identifier(std::get<std::string>(lit->value))) {
        throw NlUnsupported("only identifier arguments have a sentence form");
    }
    return std::get<std::string>(lit->value);
}

std::string check_phrase(const dsl::Predicate& p) {
    switch (p.relation) {
        case dsl::Relation::Close: return p.negated ? "is not close to" : "is close to";
        case dsl::Relation::Visible: return p.negated ? "cannot see" : "can see";
        case dsl::Relation::Holding: return p.negated ? "is not holding" : "is holding";
        default: throw NlUnsupported("relation has no sentence form");
    }
}

std::string describe_statement(const dsl::Statement& st) {
    if (const auto* c = st.as<dsl::ActionCall>()) return describe_call_nl(*c);
    throw NlUnsupported("only action calls have a sentence form here");
}

std::string capitalized(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

const std::regex& call_re() {
    static const std::regex re(R"(^perform the action ([A-Za-z_][A-Za-z0-9_]*)(?: on the object ([A-Za-z_][A-Za-z0-9_]*)| on the objects ([A-Za-z_][A-Za-z0-9_]*) and ([A-Za-z_][A-Za-z0-9_]*))?$)");
    return re;
}

dsl::ActionCall parse_call_clause(const std::string& clause, int line) {
    std::smatch m;
    if (!std::regex_match(clause, m, call_re())) {
        throw ParseError(ParseErrorKind::UnknownConstruct, line, "not an action sentence: " + clause);
    }
    dsl::ActionCall c;
    c.name = m[1];
    for (int g : {2, 3, 4}) {
        if (m[g].matched) c.args.push_back({"", dsl::Literal{m[g].str(), '\''}});
    }
    return c;
}

dsl::Statement make(dsl::StatementNode node, int line) {
    dsl::Statement st;
    st.node = std::move(node);
    st.line = line;
    return st;
}

}  // namespace

std::string describe_call_nl(const dsl::ActionCall& call) {
    std::string out = "perform the action " + call.name;
    if (call.args.size() == 1) {
        out += " on the object " + arg_text(call.args[0]);
    } else if (call.args.size() == 2) {
        out += " on the objects " + arg_text(call.args[0]) + " and " + arg_text(call.args[1]);
    } else if (call.args.size() > 2) {
        throw NlUnsupported("at most two arguments have a sentence form");
    }
    return out;
}

std::string render_plan_nl(const dsl::PlanAst& plan, const dsl::CommentStyle& style) {
    std::ostringstream out;
    out << "Plan " << plan.name << ":\n";
    int step = 0;
    for (const auto& st : plan.body) {
        if (const auto* c = st.as<dsl::Comment>()) {
            if (style.mode == dsl::CommentStyle::Mode::Strip) continue;
            std::string text = c->text;
            if (style.mode == dsl::CommentStyle::Mode::Translate) {
                auto it = style.table->find(text);
                if (it == style.table->end()) throw dsl::MissingTranslation(text);
                text = it->second;
            }
            out << "Note: " << text << '\n';
        } else if (const auto* call = st.as<dsl::ActionCall>()) {
            out << "Step " << ++step << ": " << capitalized(describe_call_nl(*call)) << ".\n";
        } else if (const auto* a = st.as<dsl::AssertRecover>()) {
            out << "Step " << ++step << ": Check that the agent " << check_phrase(a->predicate) << " the object "
                << a->predicate.subject << '.';
            if (!a->recovery.empty()) {
                out << " If that is not the case, first ";
                for (std::size_t i = 0; i < a->recovery.size(); ++i) {
                    out << (i ? ", then " : "") << describe_statement(a->recovery[i]);
                }
                out << '.';
            }
            out << '\n';
        } else {
            throw NlUnsupported("statement has no sentence form: " + dsl::render_statement_head(st));
        }
    }
    return out.str();
}

dsl::PlanAst parse_plan_nl(std::string_view text) {
    static const std::regex header_re(R"(^Plan ([a-z][a-z0-9_]*):$)");
    static const std::regex step_re(R"(^Step [0-9]+: (.*)$)");
    static const std::regex check_re(
        R"(^Check that the agent (is close to|is not close to|can see|cannot see|is holding|is not holding) the object ([A-Za-z_][A-Za-z0-9_]*)\.(?: If that is not the case, first (.+)\.)?$)");

    dsl::PlanAst plan;
    std::size_t pos = 0;
    int line = 0;
    bool have_header = false;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string l(trim(text.substr(pos, nl - pos)));
        pos = nl + 1;
        ++line;
        if (l.empty()) continue;
        std::smatch m;
        if (!have_header) {
            if (!std::regex_match(l, m, header_re)) throw ParseError(ParseErrorKind::BadHeader, line, l);
            plan.name = m[1];
            have_header = true;
            continue;
        }
        if (l.rfind("Note:", 0) == 0) {
            plan.body.push_back(make(dsl::Comment{std::string(trim(std::string_view(l).substr(5)))}, line));
            continue;
        }
        if (!std::regex_match(l, m, step_re)) throw ParseError(ParseErrorKind::UnknownConstruct, line, l);
        std::string body = m[1];
        if (std::regex_match(body, m, check_re)) {
            dsl::AssertRecover a;
            std::string phrase = m[1];
            a.predicate.subject = m[2];
            a.predicate.negated = phrase.find("not") != std::string::npos;
            a.predicate.relation = phrase.find("see") != std::string::npos       ? dsl::Relation::Visible
                                   : phrase.find("holding") != std::string::npos ? dsl::Relation::Holding
                                                                                 : dsl::Relation::Close;
            if (m[3].matched) {
                std::string rest = m[3];
                std::size_t start = 0;
                while (true) {
                    auto sep = rest.find(", then ", start);
                    a.recovery.push_back(make(parse_call_clause(rest.substr(start, sep - start), line), line));
                    if (sep == std::string::npos) break;
                    start = sep + 7;
                }
            }
            plan.body.push_back(make(std::move(a), line));
            continue;
        }
        if (body.size() < 2 || body.back() != '.') throw ParseError(ParseErrorKind::UnknownConstruct, line, l);
        body.pop_back();
        if (body[0] >= 'A' && body[0] <= 'Z') body[0] = static_cast<char>(body[0] - 'A' + 'a');
        plan.body.push_back(make(parse_call_clause(body, line), line));
    }
    if (!have_header) throw ParseError(ParseErrorKind::BadHeader, 1, "missing plan line");
    if (plan.body.empty()) throw ParseError(ParseErrorKind::EmptyBody, line, "plan has no steps");
    return plan;
}

dsl::PlanAst parse_nl_completion(std::string_view completion, std::string_view header) {
    auto first = completion.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && completion.substr(first, 5) == "Plan ") return parse_plan_nl(completion);
    std::string text(header);
    text += '\n';
    text += completion;
    return parse_plan_nl(text);
}

std::string serialize_error_trace_nl(const exec::ErrorTrace& t, std::string_view next_plan_name) {
    std::ostringstream out;
    out << "Plan " << t.plan_name << " stopped with an error.\n";
    out << "Completed part of the plan:\n";
    for (const auto& st : t.executed_prefix) {
        if (const auto* c = st.as<dsl::Comment>()) out << "Note: " << c->text << '\n';
    }
    std::string step = t.error_step;
    try {
        auto plan = dsl::parse_plan("def step():\n    " + t.error_step + "\n");
        if (plan.body.size() == 1 && plan.body[0].is<dsl::ActionCall>()) {
            step = describe_call_nl(*plan.body[0].as<dsl::ActionCall>());
        }
    } catch (const std::exception&) {
        // keep the raw step text
    }
    auto joined = [](const std::vector<std::string>& v) {
        if (v.empty()) return std::string("nothing");
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + v[i];
        return s;
    };
    out << "The failed step: " << step << ".\n";
    out << "The error message: " << t.feedback_message << ".\n";
    out << "What the agent observes: " << joined(t.environmental_information) << ".\n";
    out << "Items in the agent's hands: " << joined(t.items_in_hand) << ".\n";
    out << "Plan " << next_plan_name << ":\n";
    return out.str();
}

}  // namespace codeplan::replan
