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

#include "codeplan/replan/task_prompt.hpp"

#include <sstream>

#include <json.hpp>

#include "codeplan/replan/nl_format.hpp"
#include "codeplan/world/world_files.hpp"

namespace codeplan::replan {

std::string_view to_string(PromptFormat f) { return f == PromptFormat::Code ? "code" : "nl"; }

std::string_view to_string(CommentMode m) {
    switch (m) {
        case CommentMode::None: return "none";
        case CommentMode::En: return "en";
        case CommentMode::Cn: return "cn";
    }
    return "?";
}

std::string initial_plan_name(std::string_view task) { return "initial_plan_for_" + std::string(task); }
std::string updated_plan_name(std::string_view task) { return "updated_plan_for_" + std::string(task); }

std::string plan_header(PromptFormat f, std::string_view plan_name) {
    if (f == PromptFormat::Code) return "def " + std::string(plan_name) + "():";
    return "Plan " + std::string(plan_name) + ":";
}

namespace {

std::string kind_list(const dsl::ActionSignature& sig) {
    std::string s;
    for (std::size_t i = 0; i < sig.args.size(); ++i) s += (i ? ", " : "") + std::string(dsl::to_string(sig.args[i]));
    return s;
}

std::string code_imports(const dsl::Vocabulary& vocab) {
    std::string s = "from actions import ";
    const auto& actions = vocab.actions();
    for (std::size_t i = 0; i < actions.size(); ++i) {
        s += (i ? ", " : "") + actions[i].name + "<" + kind_list(actions[i]) + ">";
    }
    return s;
}

std::string nl_kind(dsl::ArgKind k) {
    switch (k) {
        case dsl::ArgKind::Object: return "an object";
        case dsl::ArgKind::Text: return "a piece of text";
        case dsl::ArgKind::Integer: return "a number";
        case dsl::ArgKind::Any: return "any value";
    }
    return "a value";
}

std::string nl_imports(const dsl::Vocabulary& vocab) {
    std::string s = "You can use the following actions:";
    const auto& actions = vocab.actions();
    for (std::size_t i = 0; i < actions.size(); ++i) {
        s += (i ? "; " : " ") + actions[i].name;
        if (actions[i].args.empty()) {
            s += " takes nothing";
        } else {
            s += " takes ";
            for (std::size_t k = 0; k < actions[i].args.size(); ++k) {
                s += (k ? " and " : "") + nl_kind(actions[i].args[k]);
            }
        }
    }
    return s + ".";
}

void strip_block(dsl::Block& block) {
    dsl::Block kept;
    for (auto& st : block) {
        if (st.is<dsl::AssertRecover>()) continue;
        if (auto* l = std::get_if<dsl::Loop>(&st.node)) strip_block(l->body);
        if (auto* c = std::get_if<dsl::Conditional>(&st.node)) {
            strip_block(c->then_block);
            strip_block(c->else_block);
        }
        kept.push_back(std::move(st));
    }
    block = std::move(kept);
}

}  // namespace

dsl::PlanAst strip_assertions(const dsl::PlanAst& plan) {
    dsl::PlanAst out = plan;
    strip_block(out.body);
    return out;
}

std::string TaskPrompt::preamble() const {
    std::ostringstream out;
    out << action_imports << '\n' << object_list << "\n\n";
    out << (format == PromptFormat::Code ? "# Example tasks\n" : "Here are some example tasks.\n");
    for (std::size_t i = 0; i < few_shot.size(); ++i) {
        if (format == PromptFormat::Nl && i) out << '\n';
        out << few_shot[i];
    }
    return out.str();
}

std::string TaskPrompt::text() const {
    return preamble() + (format == PromptFormat::Code ? "\n# Next Task\n" : "\nNow write a plan for the next task.\n") +
           header + "\n";
}

std::string replan_prompt(const TaskPrompt& tp, std::string_view feedback_block) {
    return tp.preamble() + (tp.format == PromptFormat::Code ? "\n# Error Feedback\n" : "\nThe last plan failed.\n") +
           std::string(feedback_block);
}

TaskPrompt build_task_prompt(const dsl::Vocabulary& vocab, const std::vector<std::string>& objects,
                             const std::vector<dsl::PlanAst>& examples, std::string_view task_name,
                             const PromptOptions& opts) {
    TaskPrompt tp;
    tp.format = opts.format;
    if (opts.format == PromptFormat::Code) {
        tp.action_imports = code_imports(vocab);
        std::string list;
        for (std::size_t i = 0; i < objects.size(); ++i) list += (i ? ", " : "") + nlohmann::json(objects[i]).dump();
        tp.object_list = "objects = [" + list + "]";
    } else {
        tp.action_imports = nl_imports(vocab);
        std::string s = "The objects in the house are:";
        for (std::size_t i = 0; i < objects.size(); ++i) s += (i ? ", " : " ") + objects[i];
        tp.object_list = s + ".";
    }

    // Comments lacking a translation fall back to English and flag the prompt.
    dsl::TranslationTable table;
    if (opts.comments == CommentMode::Cn) {
        if (opts.translations) table = *opts.translations;
        for (const auto& ex : examples) {
            dsl::walk_statements(ex.body, [&](const dsl::Statement& st, int) {
                if (const auto* c = st.as<dsl::Comment>(); c && !table.count(c->text)) {
                    table.emplace(c->text, c->text);
                    tp.untranslated = true;
                }
            });
        }
    }
    dsl::CommentStyle style = opts.comments == CommentMode::None ? dsl::CommentStyle::strip()
                              : opts.comments == CommentMode::Cn ? dsl::CommentStyle::translate(table)
                                                                 : dsl::CommentStyle::keep();
    for (const auto& ex : examples) {
        dsl::PlanAst shown = opts.asserts ? ex : strip_assertions(ex);
        tp.few_shot.push_back(opts.format == PromptFormat::Code ? dsl::render_plan(shown, style)
                                                                : render_plan_nl(shown, style));
    }
    tp.header = plan_header(opts.format, initial_plan_name(task_name));
    return tp;
}

dsl::TranslationTable parse_translations(std::string_view text) {
    dsl::TranslationTable t;
    std::size_t pos = 0;
    int line = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string l(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line;
        if (!l.empty() && l.back() == '\r') l.pop_back();
        if (l.empty() || l[0] == '#') continue;
        auto tab = l.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == l.size()) {
            throw world::FormatError("<translations>", line, "expected english<TAB>translation");
        }
        t.emplace(l.substr(0, tab), l.substr(tab + 1));
    }
    return t;
}

dsl::TranslationTable load_translations(const std::filesystem::path& path) {
    return parse_translations(world::read_text_file(path));
}

}  // namespace codeplan::replan
