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

#include "codeplan/dsl/vocabulary.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "codeplan/dsl/plan_ast.hpp"

namespace codeplan::dsl {

std::string_view to_string(ArgKind k) {
    switch (k) {
        case ArgKind::Object: return "obj";
        case ArgKind::Text: return "text";
        case ArgKind::Integer: return "int";
        case ArgKind::Any: return "any";
    }
    return "?";
}

std::optional<ArgKind> arg_kind_from_string(std::string_view s) {
    if (s == "obj") return ArgKind::Object;
    if (s == "text") return ArgKind::Text;
    if (s == "int") return ArgKind::Integer;
    if (s == "any") return ArgKind::Any;
    return std::nullopt;
}

void Vocabulary::add_action(ActionSignature sig) {
    if (find_action(sig.name)) throw std::invalid_argument("duplicate action " + sig.name);
    actions_.push_back(std::move(sig));
}

void Vocabulary::add_object(std::string name) {
    if (object_set_.count(name)) throw std::invalid_argument("duplicate object " + name);
    object_set_.insert(name);
    objects_.push_back(std::move(name));
}

const ActionSignature* Vocabulary::find_action(std::string_view name) const {
    for (const auto& a : actions_) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

bool Vocabulary::has_object(std::string_view name) const {
    return object_set_.find(name) != object_set_.end();
}

Vocabulary Vocabulary::parse(std::string_view text) {
    Vocabulary v;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream fields(raw);
        std::string keyword;
        if (!(fields >> keyword)) continue;
        std::string spec;
        if (!(fields >> spec)) throw VocabularyError(line_no, "missing name");
        try {
            if (keyword == "object") {
                if (!is_identifier(spec)) throw VocabularyError(line_no, "bad object name " + spec);
                v.add_object(spec);
            } else if (keyword == "action") {
                auto slash = spec.find('/');
                if (slash == std::string::npos) throw VocabularyError(line_no, "expected <name>/<arity>");
                ActionSignature sig;
                sig.name = spec.substr(0, slash);
                int arity = -1;
                auto arity_text = std::string_view(spec).substr(slash + 1);
                auto [p, ec] = std::from_chars(arity_text.data(), arity_text.data() + arity_text.size(), arity);
                if (ec != std::errc{} || p != arity_text.data() + arity_text.size() || arity < 0) {
                    throw VocabularyError(line_no, "bad arity in " + spec);
                }
                sig.args.assign(static_cast<std::size_t>(arity), ArgKind::Object);
                std::string kind;
                std::size_t i = 0;
                while (fields >> kind) {
                    auto k = arg_kind_from_string(kind);
                    if (!k || i >= sig.args.size()) throw VocabularyError(line_no, "bad argument kind " + kind);
                    sig.args[i++] = *k;
                }
                if (i != 0 && i != sig.args.size()) {
                    throw VocabularyError(line_no, "kinds must be listed for every argument of " + spec);
                }
                v.add_action(std::move(sig));
            } else {
                throw VocabularyError(line_no, "unknown record " + keyword);
            }
        } catch (const std::invalid_argument& e) {
            throw VocabularyError(line_no, e.what());
        }
    }
    return v;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vocabulary " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

}  // namespace codeplan::dsl
