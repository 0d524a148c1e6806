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

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace codeplan::dsl {

enum class ArgKind {
    Object,  // a declared object identifier
    Text,    // any string
    Integer,
    Any,
};

std::string_view to_string(ArgKind k);
std::optional<ArgKind> arg_kind_from_string(std::string_view s);

struct ActionSignature {
    std::string name;
    std::vector<ArgKind> args;

    std::size_t arity() const { return args.size(); }
};

class VocabularyError : public std::runtime_error {
public:
    VocabularyError(int line, const std::string& what)
        : std::runtime_error("vocabulary line " + std::to_string(line) + ": " + what) {}
};

// Declared actions and objects a plan may reference.
class Vocabulary {
public:
    void add_action(ActionSignature sig);
    void add_object(std::string name);

    const ActionSignature* find_action(std::string_view name) const;
    bool has_object(std::string_view name) const;

    const std::vector<ActionSignature>& actions() const { return actions_; }
    const std::vector<std::string>& objects() const { return objects_; }

    // Line format: `action <name>/<arity> [kind...]`, `object <name>`, `#` comments.
    static Vocabulary parse(std::string_view text);
    static Vocabulary load(const std::filesystem::path& path);

private:
    std::vector<ActionSignature> actions_;
    std::vector<std::string> objects_;
    std::set<std::string, std::less<>> object_set_;
};

}  // namespace codeplan::dsl
