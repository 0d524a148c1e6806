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

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace codeplan::agents {

// Tool results, arguments and variable bindings. Key order is kept so that
// serialized output is stable.
using Value = nlohmann::ordered_json;

// Wire form: {"tool": name, "args": {param: scalar, ...}}.
struct ToolCall {
    std::string tool;
    Value args = Value::object();

    bool operator==(const ToolCall& o) const { return tool == o.tool && args == o.args; }
};

class WireFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_scalar(const Value& v);

// Compact single-line encoding, args in stored order.
std::string encode_tool_call(const ToolCall& call);

// Strict: exactly the two keys, a string tool name, scalar args, nothing
// after the closing brace. Throws WireFormatError.
ToolCall decode_tool_call(std::string_view text);

Value to_value(const ToolCall& call);

}  // namespace codeplan::agents
