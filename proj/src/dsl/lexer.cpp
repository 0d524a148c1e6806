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

#include "codeplan/dsl/lexer.hpp"

#include <cctype>
#include <charconv>

namespace codeplan::dsl {

std::optional<std::vector<Token>> tokenize_line(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        Token tok;
        tok.offset = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) {
                ++j;
            }
            tok.kind = TokenKind::Identifier;
            tok.text = std::string(line.substr(i, j - i));
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '-' && i + 1 < line.size() &&
                    std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
            std::size_t j = i + 1;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
            if (ec != std::errc{} || ptr != line.data() + j) return std::nullopt;
            tok.kind = TokenKind::Integer;
            tok.integer = v;
            i = j;
        } else if (c == '\'' || c == '"') {
            std::string value;
            std::size_t j = i + 1;
            bool closed = false;
            while (j < line.size()) {
                char d = line[j];
                if (d == '\\' && j + 1 < line.size()) {
                    char e = line[j + 1];
                    switch (e) {
                        case 'n': value.push_back('\n'); break;
                        case 't': value.push_back('\t'); break;
                        default: value.push_back(e); break;
                    }
                    j += 2;
                    continue;
                }
                if (d == c) {
                    closed = true;
                    ++j;
                    break;
                }
                value.push_back(d);
                ++j;
            }
            if (!closed) return std::nullopt;
            tok.kind = TokenKind::String;
            tok.text = std::move(value);
            tok.quote = c;
            i = j;
        } else {
            switch (c) {
                case '(': tok.kind = TokenKind::LParen; break;
                case ')': tok.kind = TokenKind::RParen; break;
                case '[': tok.kind = TokenKind::LBracket; break;
                case ']': tok.kind = TokenKind::RBracket; break;
                case ',': tok.kind = TokenKind::Comma; break;
                case '=': tok.kind = TokenKind::Equals; break;
                case ':': tok.kind = TokenKind::Colon; break;
                case '.': tok.kind = TokenKind::Dot; break;
                default: return std::nullopt;
            }
            ++i;
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = TokenKind::End;
    end.offset = line.size();
    out.push_back(end);
    return out;
}

std::string quote_string(std::string_view value, char quote) {
    std::string out;
    out.reserve(value.size() + 2);
    out.push_back(quote);
    for (char c : value) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c == quote) out.push_back('\\');
                out.push_back(c);
        }
    }
    out.push_back(quote);
    return out;
}

}  // namespace codeplan::dsl
