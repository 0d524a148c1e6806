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

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace codeplan::tools {

struct Document {
    std::string id;  // url-shaped
    std::string title;
    bool dead = false;  // indexed, but fails to load
    std::vector<std::string> paragraphs;
};

// Lowercased runs of ASCII letters and digits.
std::vector<std::string> keywords(std::string_view text);

std::string lowercase(std::string_view s);

// Immutable once built; safe to share between episodes.
class Corpus {
public:
    void add(Document doc);

    const Document* find(std::string_view id) const;
    const std::map<std::string, Document, std::less<>>& documents() const { return docs_; }
    std::size_t size() const { return docs_.size(); }

    // Paragraph keyword -> ids of documents whose paragraphs contain it.
    const std::vector<std::string>& docs_for_keyword(const std::string& kw) const;
    const std::map<std::string, std::vector<std::string>>& index() const { return index_; }

    // Keywords of a document's id, title and paragraphs.
    const std::set<std::string>& search_terms(const std::string& id) const;

    // First line: doc id. Optional `@title: ...` and `@status: dead` lines,
    // then paragraphs separated by blank lines.
    static Document parse_document(std::string_view text, const std::string& origin = "<doc>");
    // Loads every `*.doc` file in `dir`.
    static Corpus load_dir(const std::filesystem::path& dir);

private:
    std::map<std::string, Document, std::less<>> docs_;
    std::map<std::string, std::vector<std::string>> index_;
    std::map<std::string, std::set<std::string>> terms_;
};

struct SearchHit {
    std::string url;
    std::string title;
    bool operator==(const SearchHit&) const = default;
};

// Exact-phrase hits first, then keyword overlap descending, then doc id.
// Documents sharing no keyword with the query are left out.
std::vector<SearchHit> search(std::string_view query, const Corpus& corpus);

}  // namespace codeplan::tools
