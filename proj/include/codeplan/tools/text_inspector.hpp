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

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace codeplan::tools {

// Sentences of one paragraph, split on . ! ? ; : and line breaks, trimmed.
std::vector<std::string> split_sentences(std::string_view paragraph);

// Lowercased keywords with a plural `s` dropped from words longer than three letters.
std::set<std::string> focus_terms(std::string_view text);

// Picks up to `count` snippets from `text` (paragraphs separated by blank
// lines). Sentences sharing a term with `focus` are anchors; the other
// sentences of an anchored paragraph are ranked by distance to the nearest
// anchor, then by that anchor's overlap (more first), then by position.
std::vector<std::string> inspect(std::string_view text, std::string_view focus, std::size_t count);

}  // namespace codeplan::tools
