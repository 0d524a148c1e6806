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

#include "codeplan/tools/text_inspector.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "codeplan/tools/corpus.hpp"

namespace codeplan::tools {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_paragraphs(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto gap = text.find("\n\n", pos);
        if (gap == std::string_view::npos) gap = text.size();
        auto p = trim(text.substr(pos, gap - pos));
        if (!p.empty()) out.push_back(p);
        pos = gap + 2;
    }
    return out;
}

std::size_t overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t n = 0;
    for (const auto& x : a) n += b.count(x);
    return n;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view paragraph) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= paragraph.size(); ++i) {
        bool end = i == paragraph.size();
        if (!end) {
            char c = paragraph[i];
            end = c == '.' || c == '!' || c == '?' || c == ';' || c == ':' || c == '\n';
        }
        if (!end) continue;
        auto s = trim(paragraph.substr(start, i - start));
        if (!s.empty()) out.emplace_back(s);
        start = i + 1;
    }
    return out;
}

std::set<std::string> focus_terms(std::string_view text) {
    std::set<std::string> out;
    for (auto k : keywords(text)) {
        if (k.size() > 3 && k.back() == 's') k.pop_back();
        out.insert(std::move(k));
    }
    return out;
}

std::vector<std::string> inspect(std::string_view text, std::string_view focus, std::size_t count) {
    if (count == 0) throw std::invalid_argument("count must be at least 1");
    const auto fterms = focus_terms(focus);
    struct Candidate {
        std::size_t distance;
        std::size_t anchor_overlap;
        std::size_t position;
        std::string sentence;
    };
    std::vector<Candidate> candidates;
    std::size_t position = 0;
    for (auto para : split_paragraphs(text)) {
        auto sentences = split_sentences(para);
        std::vector<std::size_t> score(sentences.size());
        for (std::size_t i = 0; i < sentences.size(); ++i) score[i] = overlap(focus_terms(sentences[i]), fterms);
        for (std::size_t i = 0; i < sentences.size(); ++i, ++position) {
            if (score[i] > 0) continue;
            std::optional<std::pair<std::size_t, std::size_t>> best;  // distance, anchor overlap
            for (std::size_t a = 0; a < sentences.size(); ++a) {
                if (score[a] == 0) continue;
                std::size_t d = a > i ? a - i : i - a;
                if (!best || d < best->first || (d == best->first && score[a] > best->second)) best = {d, score[a]};
            }
            if (best) candidates.push_back({best->first, best->second, position, sentences[i]});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::make_tuple(a.distance, -static_cast<long>(a.anchor_overlap), a.position) <
               std::make_tuple(b.distance, -static_cast<long>(b.anchor_overlap), b.position);
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < candidates.size() && out.size() < count; ++i) out.push_back(candidates[i].sentence);
    return out;
}

}  // namespace codeplan::tools
