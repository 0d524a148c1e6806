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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "codeplan/tools/corpus.hpp"

namespace codeplan::tools {

class ToolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kUrlFailed = "URL failed to load";
inline constexpr std::size_t kPageSize = 5;  // paragraphs per viewport

// Per-episode browsing state over a shared corpus.
class BrowseSession {
public:
    explicit BrowseSession(const Corpus& corpus) : corpus_(&corpus) {}

    // Opens `url` at its first page and returns the page text.
    std::string visit(const std::string& url);
    std::string page_down();
    std::string page_up();

    // Paragraphs of the open document containing `keyword`, case-insensitive.
    std::vector<std::string> finder(const std::string& keyword) const;

    // Case-insensitive probe over the current viewport.
    bool contains(const std::string& probe) const;

    const std::optional<std::string>& current_doc() const { return current_; }
    std::size_t page_start() const { return start_; }
    std::size_t page_end() const;
    std::size_t scroll_count() const { return scrolls_; }
    std::vector<std::string> viewport() const;
    std::string viewport_text() const;

private:
    const Document& open_doc() const;

    const Corpus* corpus_;
    std::optional<std::string> current_;
    std::size_t start_ = 0;
    std::size_t scrolls_ = 0;
};

std::string join_paragraphs(const std::vector<std::string>& paragraphs);

}  // namespace codeplan::tools
