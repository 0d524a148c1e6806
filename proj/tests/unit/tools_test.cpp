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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <optional>

#include "codeplan/tools/browse.hpp"
#include "codeplan/tools/corpus.hpp"
#include "codeplan/tools/text_inspector.hpp"
#include "fixtures.hpp"

using namespace codeplan::tools;

namespace {

const Corpus& fixture_corpus() {
    static const Corpus c = Corpus::load_dir(codeplan::testing::fixture("corpus"));
    return c;
}

const char* kSummary = "https://example.org/ai-chip-summary";
const char* kDead = "https://techcrunch.com/example-ai-chip";

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Word-by-word scan used as an independent tokenizer in the oracles below.
std::set<std::string> words_of(const std::string& s) {
    std::set<std::string> out;
    std::string cur;
    for (char c : s + " ") {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!cur.empty()) {
            out.insert(cur);
            cur.clear();
        }
    }
    return out;
}

std::string collapse(const std::string& s) {
    std::string out;
    std::istringstream in(lower(s));
    std::string w;
    while (in >> w) out += (out.empty() ? "" : " ") + w;
    return out;
}

std::vector<std::string> brute_search(const std::string& query, const Corpus& corpus) {
    auto q = words_of(query);
    std::string phrase = collapse(query);
    std::vector<std::tuple<int, int, std::string, std::string>> rows;
    for (const auto& [id, doc] : corpus.documents()) {
        std::string all = id + " " + doc.title;
        std::string body = doc.title;
        for (const auto& p : doc.paragraphs) {
            all += " " + p;
            body += "\n" + p;
        }
        auto terms = words_of(all);
        int ov = 0;
        for (const auto& w : q) ov += terms.count(w) ? 1 : 0;
        if (ov == 0) continue;
        bool hit = false;
        if (!phrase.empty()) {
            if (collapse(doc.title).find(phrase) != std::string::npos) hit = true;
            for (const auto& p : doc.paragraphs) hit = hit || collapse(p).find(phrase) != std::string::npos;
        }
        rows.emplace_back(hit ? 0 : 1, -ov, id, doc.title);
    }
    std::sort(rows.begin(), rows.end());
    std::vector<std::string> out;
    for (const auto& r : rows) out.push_back(std::get<2>(r));
    return out;
}

std::string stem(std::string w) {
    if (w.size() > 3 && w.back() == 's') w.pop_back();
    return w;
}

// Scores every (sentence, anchor) pair of each paragraph and keeps the best.
std::vector<std::string> brute_inspect(const std::vector<std::vector<std::string>>& paras, const std::string& focus,
                                       std::size_t count) {
    std::set<std::string> f;
    for (const auto& w : words_of(focus)) f.insert(stem(w));
    auto score = [&](const std::string& s) {
        std::set<std::string> t;
        for (const auto& w : words_of(s)) t.insert(stem(w));
        int n = 0;
        for (const auto& w : t) n += f.count(w) ? 1 : 0;
        return n;
    };
    std::vector<std::tuple<long, long, long, std::string>> best;
    long pos = 0;
    for (const auto& sentences : paras) {
        for (std::size_t i = 0; i < sentences.size(); ++i, ++pos) {
            if (score(sentences[i]) > 0) continue;
            std::optional<std::tuple<long, long, long, std::string>> b;
            for (std::size_t a = 0; a < sentences.size(); ++a) {
                int sa = score(sentences[a]);
                if (sa == 0) continue;
                std::tuple<long, long, long, std::string> key{std::labs(static_cast<long>(a) - static_cast<long>(i)),
                                                              -sa, pos, sentences[i]};
                if (!b || key < *b) b = key;
            }
            if (b) best.push_back(*b);
        }
    }
    std::sort(best.begin(), best.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < best.size() && i < count; ++i) out.push_back(std::get<3>(best[i]));
    return out;
}

}  // namespace

TEST(Corpus, LoadsFixture) {
    const auto& c = fixture_corpus();
    EXPECT_EQ(c.size(), 5u);
    const auto* d = c.find(kSummary);
    ASSERT_NE(d, nullptr);
    EXPECT_EQ(d->paragraphs.size(), 10u);
    EXPECT_EQ(d->title, "AI chip summary: market outlook 2025");
    EXPECT_TRUE(c.find(kDead)->dead);
}

TEST(Corpus, IndexInvariant) {
    const auto& c = fixture_corpus();
    for (const auto& [kw, ids] : c.index()) {
        for (const auto& id : ids) {
            bool found = false;
            for (const auto& p : c.find(id)->paragraphs) found = found || words_of(p).count(kw);
            EXPECT_TRUE(found) << kw << " in " << id;
        }
    }
}

TEST(Corpus, RejectsDuplicatesAndBadMetadata) {
    Corpus c;
    c.add({"a", "", false, {"x"}});
    EXPECT_THROW(c.add({"a", "", false, {"y"}}), std::invalid_argument);
    EXPECT_THROW(Corpus::parse_document("id\n@colour: red\n\ntext\n"), codeplan::world::FormatError);
}

TEST(Search, PhraseAndOverlapOrdering) {
    const auto& c = fixture_corpus();
    auto hits = search("AI chip market 2025 site:techcrunch.com", c);
    ASSERT_FALSE(hits.empty());
    EXPECT_EQ(hits[0].url, kDead);
    hits = search("AI chip summary", c);
    ASSERT_FALSE(hits.empty());
    EXPECT_EQ(hits[0].url, kSummary);
    EXPECT_TRUE(search("zebra quokka", c).empty());
}

TEST(Search, MatchesBruteForceScoring) {
    const auto& c = fixture_corpus();
    const std::vector<std::string> vocab = {"AI",    "chip",  "market", "edge",  "computing", "bread",
                                            "yeast", "GPU",   "2025",   "the",   "growth",    "drivers",
                                            "zebra", "Paris", "Eiffel", "Tower", "summary",   "techcrunch"};
    std::mt19937 rng(17);
    for (int i = 0; i < 100; ++i) {
        std::string q;
        int n = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < n; ++k) q += (k ? " " : "") + vocab[rng() % vocab.size()];
        auto hits = search(q, c);
        std::vector<std::string> ids;
        for (const auto& h : hits) ids.push_back(h.url);
        EXPECT_EQ(ids, brute_search(q, c)) << q;
    }
}

TEST(Browse, VisitAndErrors) {
    BrowseSession s(fixture_corpus());
    EXPECT_THROW(s.page_down(), ToolError);
    EXPECT_THROW(s.finder("x"), ToolError);
    try {
        s.visit(kDead);
        FAIL();
    } catch (const ToolError& e) {
        EXPECT_STREQ(e.what(), "URL failed to load");
    }
    try {
        s.visit("https://nowhere.example/missing");
        FAIL();
    } catch (const ToolError& e) {
        EXPECT_STREQ(e.what(), "URL failed to load");
    }
    s.visit(kSummary);
    EXPECT_EQ(s.page_start(), 0u);
    EXPECT_EQ(s.viewport().size(), kPageSize);
    EXPECT_FALSE(s.contains("growth driver"));
    s.page_down();
    EXPECT_TRUE(s.contains("Growth Driver"));
    EXPECT_EQ(s.scroll_count(), 1u);
    s.visit(kSummary);
    EXPECT_EQ(s.scroll_count(), 0u);
}

TEST(Browse, PagingClampsAndInverts) {
    BrowseSession s(fixture_corpus());
    s.visit(kSummary);
    s.page_up();
    EXPECT_EQ(s.page_start(), 0u);
    s.page_down();
    s.page_down();
    EXPECT_EQ(s.page_start(), 5u);
    EXPECT_EQ(s.scroll_count(), 2u);

    Corpus big;
    std::vector<std::string> paras;
    for (int i = 0; i < 53; ++i) paras.push_back("paragraph " + std::to_string(i));
    big.add({"doc", "", false, paras});
    std::mt19937 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        BrowseSession b(big);
        b.visit("doc");
        std::size_t start_pages = rng() % 5;
        for (std::size_t k = 0; k < start_pages; ++k) b.page_down();
        std::size_t initial = b.page_start();
        std::size_t max_down = (paras.size() - 1) / kPageSize - initial / kPageSize;
        std::size_t n = max_down ? rng() % (max_down + 1) : 0;
        for (std::size_t k = 0; k < n; ++k) b.page_down();
        EXPECT_EQ(b.page_start(), initial + n * kPageSize);
        for (std::size_t k = 0; k < n; ++k) b.page_up();
        EXPECT_EQ(b.page_start(), initial);
    }
}

TEST(Browse, FinderMatchesFilter) {
    const auto& c = fixture_corpus();
    BrowseSession s(c);
    s.visit(kSummary);
    for (const std::string kw : {"AI chip", "ai CHIP", "the", "zebra", "2025", ""}) {
        std::vector<std::string> want;
        for (const auto& p : c.find(kSummary)->paragraphs) {
            if (lower(p).find(lower(kw)) != std::string::npos) want.push_back(p);
        }
        EXPECT_EQ(s.finder(kw), want) << kw;
    }
    EXPECT_EQ(s.finder("AI chip").size(), 3u);
}

TEST(Inspect, FixtureDrivers) {
    BrowseSession s(fixture_corpus());
    s.visit(kSummary);
    auto text = join_paragraphs(s.finder("AI chip"));
    auto drivers = inspect(text, "growth drivers", 3);
    EXPECT_EQ(drivers, (std::vector<std::string>{"Edge computing boom", "National policy support",
                                                 "Generative AI demand"}));
    EXPECT_TRUE(inspect(text, "zebra", 3).empty());
    EXPECT_EQ(inspect(text, "growth drivers", 1).size(), 1u);
    EXPECT_THROW(inspect(text, "x", 0), std::invalid_argument);
}

TEST(Inspect, SplitSentences) {
    EXPECT_EQ(split_sentences("A: b; c. d!\ne?"), (std::vector<std::string>{"A", "b", "c", "d", "e"}));
    EXPECT_TRUE(split_sentences("  ..  ").empty());
}

TEST(Inspect, MatchesBruteForceScoring) {
    const std::vector<std::string> words = {"growth", "drivers", "driver", "chip", "market", "edge",
                                            "boom",   "policy",  "demand", "yeast", "bus",  "news"};
    const std::vector<std::string> stops = {". ", "; ", ": ", "! ", "? "};
    std::mt19937 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<std::string>> paras;
        std::string text;
        int np = 1 + static_cast<int>(rng() % 3);
        for (int p = 0; p < np; ++p) {
            std::vector<std::string> sentences;
            std::string para;
            int ns = 1 + static_cast<int>(rng() % 6);
            for (int s = 0; s < ns; ++s) {
                std::string sentence;
                int nw = 1 + static_cast<int>(rng() % 3);
                for (int w = 0; w < nw; ++w) sentence += (w ? " " : "") + words[rng() % words.size()];
                sentence += " s" + std::to_string(trial) + "_" + std::to_string(p) + "_" + std::to_string(s);
                sentences.push_back(sentence);
                para += sentence + stops[rng() % stops.size()];
            }
            paras.push_back(sentences);
            text += (p ? "\n\n" : "") + para;
        }
        std::string focus = words[rng() % words.size()] + " " + words[rng() % words.size()];
        std::size_t count = 1 + rng() % 4;
        EXPECT_EQ(inspect(text, focus, count), brute_inspect(paras, focus, count)) << text << " | " << focus;
    }
}
