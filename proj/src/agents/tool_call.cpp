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

#include "codeplan/agents/tool_call.hpp"

namespace codeplan::agents {

bool is_scalar(const Value& v) { return v.is_string() || v.is_number() || v.is_boolean(); }

Value to_value(const ToolCall& call) {
    Value v = Value::object();
    v["tool"] = call.tool;
    v["args"] = call.args;
    return v;
}

std::string encode_tool_call(const ToolCall& call) {
    if (!call.args.is_object()) throw WireFormatError("args must be an object");
    for (const auto& [k, v] : call.args.items()) {
        if (!is_scalar(v)) throw WireFormatError("argument " + k + " is not a scalar");
    }
    return to_value(call).dump();
}

ToolCall decode_tool_call(std::string_view text) {
    Value v;
    try {
        v = Value::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw WireFormatError(std::string("malformed tool call: ") + e.what());
    }
    if (!v.is_object() || v.size() != 2 || !v.contains("tool") || !v.contains("args")) {
        throw WireFormatError("tool call must have exactly the keys tool and args");
    }
    if (!v["tool"].is_string() || v["tool"].get<std::string>().empty()) {
        throw WireFormatError("tool must be a non-empty string");
    }
    if (!v["args"].is_object()) throw WireFormatError("args must be an object");
    for (const auto& [k, a] : v["args"].items()) {
        if (!is_scalar(a)) throw WireFormatError("argument " + k + " is not a scalar");
    }
    return ToolCall{v["tool"].get<std::string>(), v["args"]};
}

}  // namespace codeplan::agents
