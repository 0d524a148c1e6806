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
#include <vector>

#include "codeplan/dsl/plan_ast.hpp"

namespace codeplan::exec {

enum class FailureKind {
    ActionFailed,
    AssertionFailed,
    LimitExceeded,
    Unsupported,  // construct the embodied executor cannot run
    Rejected,     // completion failed to parse or validate; no statement ran
};

std::string_view to_string(FailureKind k);

// Structured diagnostic sent back to the model after an escalated failure.
struct ErrorTrace {
    std::string plan_name;
    std::vector<dsl::Statement> executed_prefix;  // comments and succeeded action calls
    std::string error_step;
    std::string feedback_message;
    std::vector<std::string> environmental_information;
    std::vector<std::string> items_in_hand;
    FailureKind kind = FailureKind::ActionFailed;

    bool operator==(const ErrorTrace&) const = default;
};

enum class PrefixMode {
    Elided,  // comments kept, statement runs replaced by `...`
    Full,
};

// Emits the feedback block: executed prefix under the failing plan's header,
// error_step, feedback_message, environmental_information, items_in_hand and
// the bare header of the next plan. Parts are separated by one blank line.
std::string serialize_error_trace(const ErrorTrace& t, std::string_view next_plan_name,
                                  PrefixMode mode = PrefixMode::Elided);

struct ParsedFeedback {
    ErrorTrace trace;            // executed_prefix filled only for Full blocks
    bool prefix_elided = false;
    std::vector<std::string> prefix_lines;
    std::string next_plan_name;
};

class FeedbackFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ParsedFeedback parse_error_feedback(std::string_view text);

// Blank lines dropped and trailing whitespace stripped.
std::string normalize_whitespace(std::string_view text);

std::string quote_json_string(std::string_view s);

}  // namespace codeplan::exec
