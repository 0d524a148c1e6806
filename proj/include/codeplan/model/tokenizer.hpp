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

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace codeplan::model {

class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    virtual std::size_t count(std::string_view text) const = 0;
    virtual std::string name() const = 0;
};

// Reference segmenter: each run of ASCII letters, digits and underscores is
// one token, each other printable ASCII character is one token, each
// non-ASCII code point is one token, whitespace is free.
class ReferenceTokenizer final : public Tokenizer {
public:
    std::size_t count(std::string_view text) const override;
    std::string name() const override { return "reference"; }
};

std::size_t count_tokens(std::string_view text);

const Tokenizer& reference_tokenizer();

}  // namespace codeplan::model
