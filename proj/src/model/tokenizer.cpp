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

#include "codeplan/model/tokenizer.hpp"

namespace codeplan::model {

namespace {

bool is_word(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::size_t ReferenceTokenizer::count(std::string_view text) const {
    std::size_t n = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        auto c = static_cast<unsigned char>(text[i]);
        if (is_space(c)) {
            ++i;
        } else if (is_word(c)) {
            ++n;
            while (i < text.size() && is_word(static_cast<unsigned char>(text[i]))) ++i;
        } else if (c < 0x80) {
            ++n;
            ++i;
        } else {
            // One token per code point; continuation bytes are skipped.
            ++n;
            ++i;
            while (i < text.size() && (static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) ++i;
        }
    }
    return n;
}

const Tokenizer& reference_tokenizer() {
    static const ReferenceTokenizer t;
    return t;
}

std::size_t count_tokens(std::string_view text) { return reference_tokenizer().count(text); }

}  // namespace codeplan::model
