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

#include <cstdlib>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "codeplan/dsl/parser.hpp"
#include "codeplan/dsl/render.hpp"
#include "codeplan/model/backend.hpp"
#include "codeplan/model/cost.hpp"
#include "codeplan/model/http_backend.hpp"
#include "codeplan/model/recording.hpp"
#include "codeplan/model/tokenizer.hpp"
#include "fixtures.hpp"

using namespace codeplan::model;
using codeplan::testing::fixture;
using codeplan::testing::read_fixture;

TEST(Tokenizer, Golden) {
    EXPECT_EQ(count_tokens(""), 0u);
    EXPECT_EQ(count_tokens("walk('livingroom')"), 6u);
    EXPECT_EQ(count_tokens("  # Step 1: Locate sofa\n"), 6u);
    EXPECT_EQ(count_tokens("步骤1"), 3u);
}

TEST(Tokenizer, AppendingNeverDecreases) {
    std::mt19937 rng(3);
    const std::string alphabet = "ab_1 (')\n#\xE6\xAD\xA5";
    for (int i = 0; i < 2000; ++i) {
        std::string a, b;
        for (int k = 0; k < 12; ++k) a += alphabet[rng() % (alphabet.size() - 3)];
        for (int k = 0; k < 12; ++k) b += alphabet[rng() % (alphabet.size() - 3)];
        if (rng() % 4 == 0) b += "\xE6\xAD\xA5";
        EXPECT_GE(count_tokens(a + b), count_tokens(a)) << a << "|" << b;
    }
}

TEST(Tokenizer, StripNeverExceedsKeep) {
    for (const char* rel : {"plans/throw_away_apple.plan", "plans/watch_tv.plan", "plans/read_book_in_bed.plan",
                            "completions/eat_bread_on_sofa.initial.plan"}) {
        auto plan = codeplan::dsl::parse_plan(read_fixture(rel));
        auto keep = count_tokens(codeplan::dsl::render_plan(plan));
        auto strip = count_tokens(codeplan::dsl::render_plan(plan, codeplan::dsl::CommentStyle::strip()));
        EXPECT_LT(strip, keep) << rel;
    }
}

TEST(Cost, ZeroAndLinear) {
    auto m = CostModel::per_million("m", 0.15, 0.60);
    EXPECT_EQ(cost({}, m), 0);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        TokenUsage a{rng() % 100'000'000, rng() % 1'000'000};
        TokenUsage b{rng() % 100'000'000, rng() % 1'000'000};
        EXPECT_EQ(cost(a + b, m), cost(a, m) + cost(b, m));
        EXPECT_EQ(cost(TokenUsage{a.input_tokens * 3, a.output_tokens * 3}, m), 3 * cost(a, m));
    }
}

TEST(Cost, ConfigFileAndUnknownModel) {
    auto table = CostTable::load(fixture("configs/cost_models.json"));
    EXPECT_EQ(table.names().size(), 4u);
    EXPECT_NEAR(to_dollars(table.cost({23'280'000, 174'600}, "gemini-2.5-flash")), 3.60, 0.05);
    EXPECT_NEAR(to_dollars(table.cost({17'930'000, 386'880}, "gemini-2.5-pro")), 26.28, 0.05);
    EXPECT_NEAR(to_dollars(table.cost({1'000'000, 42'210}, "gpt-4.1")), 2.34, 0.05);
    EXPECT_NEAR(to_dollars(table.cost({1'580'000, 83'530}, "llama-4-maverick")), 0.32, 0.05);
    EXPECT_THROW(table.get("nope"), UnknownModel);
    EXPECT_THROW(CostTable::parse("{\"models\": {\"x\": {\"input_per_million\": -1, \"output_per_million\": 1}}}"),
                 std::invalid_argument);
}

TEST(Scripted, ReturnsInOrderPerEpisode) {
    ScriptedBackend b({{"", "first", std::nullopt}, {"", "second", std::nullopt}});
    CallContext e1{"e1", "t", 0}, e2{"e2", "t", 0};
    EXPECT_EQ(b.complete("p", e1).text, "first");
    EXPECT_EQ(b.complete("p", e2).text, "first");
    EXPECT_EQ(b.complete("p", e1).text, "second");
    try {
        b.complete("p", e1);
        FAIL();
    } catch (const ModelError& e) {
        EXPECT_EQ(e.kind(), ModelErrorKind::ScriptExhausted);
    }
}

TEST(Scripted, EmptyScriptAndMismatch) {
    ScriptedBackend empty;
    EXPECT_THROW(empty.complete("p", {"e", "t", 0}), ModelError);
    ScriptedBackend b({{"needle", "x", std::nullopt}});
    try {
        b.complete("haystack", {"e", "t", 0});
        FAIL();
    } catch (const ModelError& e) {
        EXPECT_EQ(e.kind(), ModelErrorKind::ScriptMismatch);
    }
}

TEST(Scripted, UsageDefaultsToReferenceCounts) {
    ScriptedBackend b({{"", "walk('sofa')", std::nullopt}, {"", "x", TokenUsage{10, 20}}});
    auto c = b.complete("def p():", {"e", "t", 0});
    EXPECT_EQ(c.usage, (TokenUsage{count_tokens("def p():"), 6}));
    EXPECT_EQ(b.complete("q", {"e", "t", 1}).usage, (TokenUsage{10, 20}));
}

TEST(Scripted, LoadsSofaScript) {
    auto b = ScriptedBackend::load(fixture("scripts/embodied_code.json"));
    CallContext ctx{"ep", "eat_bread_on_sofa", 0};
    EXPECT_EQ(b.complete("def initial_plan_for_eat_bread_on_sofa():", ctx).text,
              read_fixture("completions/eat_bread_on_sofa.initial.plan"));
    ctx.call_index = 1;
    EXPECT_EQ(b.complete("def updated_plan_for_eat_bread_on_sofa():", ctx).text,
              read_fixture("completions/eat_bread_on_sofa.updated.plan"));
}

TEST(Recording, RoundTripIsByteIdentical) {
    ScriptedBackend inner({{"", "alpha \"quoted\"\nline", std::nullopt}, {"", "beta", TokenUsage{5, 7}}});
    TranscriptStore store;
    RecordingBackend rec(inner, store);
    std::vector<Completion> live;
    live.push_back(rec.complete("prompt one", {"ep", "t", 0}));
    live.push_back(rec.complete("prompt two", {"ep", "t", 1}));

    auto reloaded = TranscriptStore::parse(store.to_ndjson());
    EXPECT_EQ(reloaded.to_ndjson(), store.to_ndjson());
    ReplayBackend replay(reloaded);
    auto r0 = replay.complete("prompt one", {"ep", "t", 0});
    auto r1 = replay.complete("prompt two", {"ep", "t", 1});
    EXPECT_EQ(r0.text, live[0].text);
    EXPECT_EQ(r0.usage, live[0].usage);
    EXPECT_EQ(r1.text, live[1].text);
    EXPECT_EQ(r1.usage, live[1].usage);
    EXPECT_THROW(replay.complete("different", {"ep", "t", 0}), ModelError);
    EXPECT_THROW(replay.complete("prompt one", {"ep", "t", 9}), ModelError);
}

TEST(Recording, ConcurrentEpisodes) {
    ScriptedBackend inner({{"", "a", std::nullopt}, {"", "b", std::nullopt}});
    TranscriptStore store;
    RecordingBackend rec(inner, store);
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            std::string ep = "ep" + std::to_string(t);
            rec.complete("p", {ep, "x", 0});
            rec.complete("p", {ep, "x", 1});
        });
    }
    for (auto& th : threads) th.join();
    auto records = store.records();
    ASSERT_EQ(records.size(), 16u);
    for (std::size_t i = 0; i < records.size(); i += 2) {
        EXPECT_EQ(records[i].completion, "a");
        EXPECT_EQ(records[i + 1].completion, "b");
    }
}

class HttpBackendTest : public ::testing::Test {
protected:
    void SetUp() override {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            last_auth_ = req.get_header_value("Authorization");
            auto j = nlohmann::json::parse(req.body);
            std::string user = j["messages"].back()["content"];
            if (user == "reject") {
                res.status = 400;
                res.set_content("{\"error\":\"bad\"}", "application/json");
                return;
            }
            nlohmann::json out = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "echo:" + user}}}}}},
                                  {"usage", {{"prompt_tokens", 11}, {"completion_tokens", 4}}}};
            res.set_content(out.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    void TearDown() override {
        server_.stop();
        thread_.join();
    }

    HttpConfig config() const {
        HttpConfig c;
        c.base_url = "http://127.0.0.1:" + std::to_string(port_);
        c.model = "test-model";
        c.api_key_env = "CODEPLAN_TEST_KEY";
        return c;
    }

    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::string last_auth_;
};

TEST_F(HttpBackendTest, ReturnsProviderUsage) {
    setenv("CODEPLAN_TEST_KEY", "secret-value", 1);
    HttpBackend b(config());
    auto c = b.complete("hello", {"e", "t", 0});
    EXPECT_EQ(c.text, "echo:hello");
    EXPECT_EQ(c.usage, (TokenUsage{11, 4}));
    EXPECT_EQ(c.usage_source, "provider");
    EXPECT_EQ(last_auth_, "Bearer secret-value");
    EXPECT_EQ(c.request_body, b.request_body("hello"));
    EXPECT_EQ(c.request_body.find("secret-value"), std::string::npos);
    unsetenv("CODEPLAN_TEST_KEY");
}

TEST_F(HttpBackendTest, ErrorsAreTyped) {
    HttpBackend b(config());
    try {
        b.complete("reject", {"e", "t", 0});
        FAIL();
    } catch (const ModelError& e) {
        EXPECT_EQ(e.kind(), ModelErrorKind::ProviderRejection);
    }
    auto cfg = config();
    cfg.base_url = "http://127.0.0.1:1";
    cfg.timeout_seconds = 2;
    HttpBackend dead(cfg);
    try {
        dead.complete("x", {"e", "t", 0});
        FAIL();
    } catch (const ModelError& e) {
        EXPECT_EQ(e.kind(), ModelErrorKind::Transport);
    }
}
