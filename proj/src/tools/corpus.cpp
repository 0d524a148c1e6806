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

#include "codeplan/tools/corpus.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "codeplan/world/world_files.hpp"

namespace codeplan::tools {

namespace {

bool is_alnum(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Collapses whitespace so phrase matching ignores line breaks.
std::string squash(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : lowercase(s)) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
            space = !out.empty();
            continue;
        }
        if (space) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

}  // namespace

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::vector<std::string> keywords(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_alnum(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_alnum(static_cast<unsigned char>(text[j]))) ++j;
        out.push_back(lowercase(text.substr(i, j - i)));
        i = j;
    }
    return out;
}

void Corpus::add(Document doc) {
    if (doc.id.empty()) throw std::invalid_argument("document without id");
    if (docs_.count(doc.id)) throw std::invalid_argument("duplicate document id " + doc.id);
    std::set<std::string> para_terms;
    for (const auto& p : doc.paragraphs) {
        for (auto& k : keywords(p)) para_terms.insert(std::move(k));
    }
    for (const auto& k : para_terms) {
        auto& ids = index_[k];
        ids.insert(std::upper_bound(ids.begin(), ids.end(), doc.id), doc.id);
    }
    auto& terms = terms_[doc.id];
    terms = para_terms;
    for (auto& k : keywords(doc.id)) terms.insert(std::move(k));
    for (auto& k : keywords(doc.title)) terms.insert(std::move(k));
    std::string id = doc.id;
    docs_.emplace(std::move(id), std::move(doc));
}

const Document* Corpus::find(std::string_view id) const {
    auto it = docs_.find(id);
    return it == docs_.end() ? nullptr : &it->second;
}

const std::vector<std::string>& Corpus::docs_for_keyword(const std::string& kw) const {
    static const std::vector<std::string> kNone;
    auto it = index_.find(lowercase(kw));
    return it == index_.end() ? kNone : it->second;
}

const std::set<std::string>& Corpus::search_terms(const std::string& id) const {
    static const std::set<std::string> kNone;
    auto it = terms_.find(id);
    return it == terms_.end() ? kNone : it->second;
}

Document Corpus::parse_document(std::string_view text, const std::string& origin) {
    Document doc;
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.emplace_back(trim(text.substr(pos, nl - pos)));
        pos = nl + 1;
    }
    std::size_t i = 0;
    while (i < lines.size() && lines[i].empty()) ++i;
    if (i == lines.size()) throw world::FormatError(origin, 1, "empty document");
    doc.id = lines[i++];
    if (doc.id.find(' ') != std::string::npos) throw world::FormatError(origin, static_cast<int>(i), "bad doc id");
    for (; i < lines.size() && !lines[i].empty() && lines[i].front() == '@'; ++i) {
        const std::string& l = lines[i];
        auto colon = l.find(':');
        if (colon == std::string::npos) throw world::FormatError(origin, static_cast<int>(i + 1), "bad metadata");
        std::string key = l.substr(1, colon - 1);
        std::string value(trim(std::string_view(l).substr(colon + 1)));
        if (key == "title") {
            doc.title = value;
        } else if (key == "status") {
            if (value != "dead" && value != "live") throw world::FormatError(origin, static_cast<int>(i + 1), "bad status");
            doc.dead = value == "dead";
        } else {
            throw world::FormatError(origin, static_cast<int>(i + 1), "unknown metadata @" + key);
        }
    }
    std::string para;
    for (; i < lines.size(); ++i) {
        if (lines[i].empty()) {
            if (!para.empty()) doc.paragraphs.push_back(std::move(para));
            para.clear();
            continue;
        }
        if (!para.empty()) para += ' ';
        para += lines[i];
    }
    if (!para.empty()) doc.paragraphs.push_back(std::move(para));
    return doc;
}

Corpus Corpus::load_dir(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".doc") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    Corpus c;
    for (const auto& f : files) c.add(parse_document(world::read_text_file(f), f.string()));
    return c;
}

std::vector<SearchHit> search(std::string_view query, const Corpus& corpus) {
    const auto qk = keywords(query);
    const std::set<std::string> qset(qk.begin(), qk.end());
    const std::string phrase = squash(query);
    struct Scored {
        bool phrase;
        std::size_t overlap;
        const Document* doc;
    };
    std::vector<Scored> scored;
    for (const auto& [id, doc] : corpus.documents()) {
        const auto& terms = corpus.search_terms(id);
        std::size_t overlap = 0;
        for (const auto& k : qset) overlap += terms.count(k);
        if (overlap == 0) continue;
        bool hit = false;
        if (!phrase.empty()) {
            hit = squash(doc.title).find(phrase) != std::string::npos;
            for (std::size_t i = 0; !hit && i < doc.paragraphs.size(); ++i) {
                hit = squash(doc.paragraphs[i]).find(phrase) != std::string::npos;
            }
        }
        scored.push_back({hit, overlap, &doc});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        return std::make_tuple(!a.phrase, -static_cast<long>(a.overlap), std::string_view(a.doc->id)) <
               std::make_tuple(!b.phrase, -static_cast<long>(b.overlap), std::string_view(b.doc->id));
    });
    std::vector<SearchHit> out;
    for (const auto& s : scored) out.push_back({s.doc->id, s.doc->title});
    return out;
}

}  // namespace codeplan::tools
