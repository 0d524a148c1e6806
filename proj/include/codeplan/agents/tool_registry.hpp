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

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codeplan/agents/tool_call.hpp"
#include "codeplan/tools/browse.hpp"
#include "codeplan/tools/corpus.hpp"

namespace codeplan::agents {

enum class ParamKind { Text, Integer, Boolean };

std::string_view to_string(ParamKind k);

struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::Text;
};

struct ToolSchema {
    std::string name;
    std::vector<ParamSpec> params;
    bool pure = false;       // result depends on the arguments only
    bool predicate = false;  // returns a boolean, usable as a loop guard
    std::string summary;

    const ParamSpec* param(std::string_view n) const;
};

// The probe behind `TextInspectorTool.contains(...)` in plans.
inline constexpr const char* kContainsProbe = "TextInspectorTool.contains";

// The six browsing tools, in the order they are advertised.
const std::vector<std::string>& standard_tool_names();

class UnknownTool : public std::invalid_argument {
public:
    explicit UnknownTool(const std::string& name) : std::invalid_argument("unknown tool " + name), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Arguments that do not fit a tool's schema.
class SchemaMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Per-episode tool state over a shared corpus.
class ToolSession {
public:
    explicit ToolSession(const tools::Corpus& corpus) : corpus_(&corpus), browser_(corpus) {}

    const tools::Corpus& corpus() const { return *corpus_; }
    tools::BrowseSession& browser() { return browser_; }
    const tools::BrowseSession& browser() const { return browser_; }

    // {"current_doc", "page_start", "page_end", "scrolls"}
    Value state() const;

private:
    const tools::Corpus* corpus_;
    tools::BrowseSession browser_;
};

using ToolFn = std::function<Value(ToolSession&, const Value& args)>;

// Immutable after construction; one registry can serve many episodes.
class ToolRegistry {
public:
    void add(ToolSchema schema, ToolFn fn);

    const ToolSchema* find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }
    std::vector<std::string> names() const;  // registration order

    // Checks `call` against the schema and runs it. Throws UnknownTool,
    // SchemaMismatch, or tools::ToolError from the tool itself.
    Value invoke(ToolSession& session, const ToolCall& call) const;
    void check(const ToolCall& call) const;

    // {"tools": [{"name", "params": [{"name", "kind"}], "pure", "predicate", "summary"}]}
    Value to_json() const;

    // The browsing tools plus the contains probe.
    static ToolRegistry standard();

private:
    struct Entry {
        ToolSchema schema;
        ToolFn fn;
    };
    std::vector<Entry> entries_;
    std::map<std::string, std::size_t, std::less<>> by_name_;
};

}  // namespace codeplan::agents
