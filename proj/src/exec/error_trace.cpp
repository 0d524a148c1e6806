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

#include "codeplan/exec/error_trace.hpp"

#include <sstream>

#include <json.hpp>

#include "codeplan/dsl/parser.hpp"
#include "codeplan/dsl/render.hpp"

namespace codeplan::exec {

std::string_view to_string(FailureKind k) {
    switch (k) {
        case FailureKind::ActionFailed: return "ActionFailed";
        case FailureKind::AssertionFailed: return "AssertionFailed";
        case FailureKind::LimitExceeded: return "LimitExceeded";
        case FailureKind::Unsupported: return "Unsupported";
        case FailureKind::Rejected: return "Rejected";
    }
    return "?";
}

std::string quote_json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

namespace {

constexpr std::string_view kPad = "    ";

void emit_prefix(std::ostringstream& out, const ErrorTrace& t, PrefixMode mode) {
    out << "def " << t.plan_name << "():\n";
    if (mode == PrefixMode::Full) {
        for (const auto& st : t.executed_prefix) out << kPad << dsl::render_statement_head(st) << '\n';
        return;
    }
    bool pending = false;
    for (const auto& st : t.executed_prefix) {
        if (st.is<dsl::Comment>()) {
            if (pending) out << kPad << "...\n";
            out << kPad << dsl::render_statement_head(st) << '\n';
            pending = false;
        } else {
            pending = true;
        }
    }
    // The last group always holds the failing step.
    out << kPad << "...\n";
}

void emit_list(std::ostringstream& out, std::string_view name, const std::vector<std::string>& items,
               bool multiline) {
    out << name << " = [";
    if (items.empty()) {
        out << "]\n";
        return;
    }
    if (!multiline) {
        for (std::size_t i = 0; i < items.size(); ++i) out << (i ? ", " : "") << quote_json_string(items[i]);
        out << "]\n";
        return;
    }
    out << '\n';
    for (std::size_t i = 0; i < items.size(); ++i) {
        out << "  " << quote_json_string(items[i]) << (i + 1 < items.size() ? "," : "") << '\n';
    }
    out << "]\n";
}

std::string_view rstrip(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string_view lstrip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        out.push_back(rstrip(text.substr(start, nl - start)));
        start = nl + 1;
    }
    return out;
}

std::string parse_json_string(std::string_view s) {
    try {
        auto j = nlohmann::json::parse(s);
        if (!j.is_string()) throw FeedbackFormatError("expected a string literal");
        return j.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw FeedbackFormatError(std::string("bad string literal: ") + e.what());
    }
}

std::vector<std::string> parse_json_list(std::string_view s) {
    try {
        auto j = nlohmann::json::parse(s);
        if (!j.is_array()) throw FeedbackFormatError("expected a list");
        std::vector<std::string> out;
        for (const auto& e : j) out.push_back(e.get<std::string>());
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw FeedbackFormatError(std::string("bad list: ") + e.what());
    }
}

std::string header_name(std::string_view line) {
    if (line.substr(0, 4) != "def " || line.size() < 7 || line.substr(line.size() - 3) != "():") {
        throw FeedbackFormatError("expected a plan header, got: " + std::string(line));
    }
    return std::string(line.substr(4, line.size() - 7));
}

}  // namespace

std::string serialize_error_trace(const ErrorTrace& t, std::string_view next_plan_name, PrefixMode mode) {
    std::ostringstream out;
    emit_prefix(out, t, mode);
    out << '\n' << "error_step = " << quote_json_string(t.error_step) << "\n\n";
    out << "feedback_message = (\n  " << quote_json_string(t.feedback_message) << "\n)\n\n";
    emit_list(out, "environmental_information", t.environmental_information, true);
    out << '\n';
    emit_list(out, "items_in_hand", t.items_in_hand, false);
    out << '\n' << "def " << next_plan_name << "():\n";
    return out.str();
}

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    for (auto line : split_lines(text)) {
        if (line.empty()) continue;
        out += line;
        out += '\n';
    }
    return out;
}

ParsedFeedback parse_error_feedback(std::string_view text) {
    std::vector<std::string_view> lines;
    for (auto l : split_lines(text)) {
        if (!l.empty()) lines.push_back(l);
    }
    std::size_t i = 0;
    auto need = [&](std::string_view what) {
        if (i >= lines.size()) throw FeedbackFormatError("missing " + std::string(what));
        return lines[i];
    };

    ParsedFeedback pf;
    pf.trace.plan_name = header_name(need("plan header"));
    ++i;
    while (i < lines.size() && (lines[i].front() == ' ' || lines[i].front() == '\t')) {
        std::string_view body = lstrip(lines[i]);
        if (body == "...") pf.prefix_elided = true;
        pf.prefix_lines.emplace_back(body);
        ++i;
    }

    auto assignment = [&](std::string_view name) -> std::string_view {
        std::string_view l = need(name);
        std::string lead = std::string(name) + " = ";
        if (l.substr(0, lead.size()) != lead) throw FeedbackFormatError("expected " + std::string(name));
        ++i;
        return l.substr(lead.size());
    };
    // Gathers a bracketed value that may span lines.
    auto gather = [&](std::string_view first, char open, char close) {
        std::string value(first);
        int depth = 0;
        auto count = [&](std::string_view s) {
            char in_str = 0;
            for (std::size_t k = 0; k < s.size(); ++k) {
                char c = s[k];
                if (in_str) {
                    if (c == '\\') ++k;
                    else if (c == in_str) in_str = 0;
                } else if (c == '"') {
                    in_str = c;
                } else if (c == open) {
                    ++depth;
                } else if (c == close) {
                    --depth;
                }
            }
        };
        count(first);
        while (depth > 0) {
            std::string_view l = need("closing bracket");
            ++i;
            value += '\n';
            value += l;
            count(l);
        }
        return value;
    };

    pf.trace.error_step = parse_json_string(assignment("error_step"));
    {
        std::string msg = gather(assignment("feedback_message"), '(', ')');
        auto open = msg.find('(');
        auto close = msg.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open) {
            throw FeedbackFormatError("feedback_message must be parenthesized");
        }
        std::string inner = msg.substr(open + 1, close - open - 1);
        auto a = inner.find_first_not_of(" \t\n");
        auto b = inner.find_last_not_of(" \t\n");
        if (a == std::string::npos) throw FeedbackFormatError("empty feedback_message");
        pf.trace.feedback_message = parse_json_string(std::string_view(inner).substr(a, b - a + 1));
    }
    pf.trace.environmental_information = parse_json_list(gather(assignment("environmental_information"), '[', ']'));
    pf.trace.items_in_hand = parse_json_list(gather(assignment("items_in_hand"), '[', ']'));
    pf.next_plan_name = header_name(need("next plan header"));
    ++i;
    if (i != lines.size()) throw FeedbackFormatError("trailing text after next plan header");

    if (!pf.prefix_elided && !pf.prefix_lines.empty()) {
        std::string src = "def " + pf.trace.plan_name + "():\n";
        for (const auto& l : pf.prefix_lines) src += "    " + l + "\n";
        try {
            pf.trace.executed_prefix = dsl::parse_plan(src).body;
        } catch (const dsl::ParseError& e) {
            throw FeedbackFormatError(std::string("bad executed prefix: ") + e.what());
        }
    }
    return pf;
}

}  // namespace codeplan::exec
