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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace codeplan::dsl {

enum class TokenKind {
    Identifier,
    String,
    Integer,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
    Colon,
    Dot,
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;       // identifier name or decoded string contents
    std::int64_t integer = 0;
    char quote = '\'';
    std::size_t offset = 0;  // byte offset into the logical line
};

// Splits one logical line of plan text into tokens. Returns nullopt on a
// character the grammar does not know or an unterminated string.
std::optional<std::vector<Token>> tokenize_line(std::string_view line);

std::string quote_string(std::string_view value, char quote);

}  // namespace codeplan::dsl
