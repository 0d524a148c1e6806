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

#include "codeplan/tools/browse.hpp"

#include <algorithm>

namespace codeplan::tools {

std::string join_paragraphs(const std::vector<std::string>& paragraphs) {
    std::string out;
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
        if (i) out += "\n\n";
        out += paragraphs[i];
    }
    return out;
}

const Document& BrowseSession::open_doc() const {
    if (!current_) throw ToolError("no document open");
    return *corpus_->find(*current_);
}

std::string BrowseSession::visit(const std::string& url) {
    const Document* doc = corpus_->find(url);
    if (!doc || doc->dead) throw ToolError(kUrlFailed);
    current_ = url;
    start_ = 0;
    scrolls_ = 0;
    return viewport_text();
}

std::size_t BrowseSession::page_end() const {
    if (!current_) return 0;
    return std::min(start_ + kPageSize, open_doc().paragraphs.size());
}

std::string BrowseSession::page_down() {
    const auto& doc = open_doc();
    if (start_ + kPageSize < doc.paragraphs.size()) start_ += kPageSize;
    ++scrolls_;
    return viewport_text();
}

std::string BrowseSession::page_up() {
    open_doc();
    start_ = start_ >= kPageSize ? start_ - kPageSize : 0;
    return viewport_text();
}

std::vector<std::string> BrowseSession::viewport() const {
    const auto& doc = open_doc();
    return {doc.paragraphs.begin() + static_cast<long>(start_), doc.paragraphs.begin() + static_cast<long>(page_end())};
}

std::string BrowseSession::viewport_text() const { return join_paragraphs(viewport()); }

std::vector<std::string> BrowseSession::finder(const std::string& keyword) const {
    const auto& doc = open_doc();
    const std::string needle = lowercase(keyword);
    std::vector<std::string> out;
    for (const auto& p : doc.paragraphs) {
        if (lowercase(p).find(needle) != std::string::npos) out.push_back(p);
    }
    return out;
}

bool BrowseSession::contains(const std::string& probe) const {
    if (!current_) return false;
    const std::string needle = lowercase(probe);
    for (const auto& p : viewport()) {
        if (lowercase(p).find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace codeplan::tools
