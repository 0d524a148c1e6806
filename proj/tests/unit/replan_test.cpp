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

#include "codeplan/dsl/parser.hpp"
#include "codeplan/exec/error_trace.hpp"
#include "codeplan/model/backend.hpp"
#include "codeplan/model/tokenizer.hpp"
#include "codeplan/replan/episode.hpp"
#include "codeplan/replan/nl_format.hpp"
#include "codeplan/replan/task_prompt.hpp"
#include "codeplan/replan/task_spec.hpp"
#include "fixtures.hpp"

using namespace codeplan;
using namespace codeplan::replan;
using codeplan::testing::fixture;
using codeplan::testing::read_fixture;

namespace {

const TaskSpec& eat_bread() {
    static const TaskSpec t = load_task(fixture("tasks/eat_bread_on_sofa.task"));
    return t;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        out.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

model::ScriptedBackend sofa_backend() {
    return model::ScriptedBackend::load(fixture("scripts/embodied_code.json"));
}

}  // namespace

TEST(TaskSpec, LoadsEmbodiedTask) {
    const auto& t = eat_bread();
    EXPECT_EQ(t.id, "eat_bread_on_sofa");
    EXPECT_EQ(t.kind, TaskKind::Embodied);
    EXPECT_EQ(t.world.agent_room, "kitchen");
    EXPECT_EQ(t.examples.size(), 2u);
    EXPECT_TRUE(t.vocab.has_object("sofa"));
    EXPECT_EQ(t.goals.predicates.size(), 2u);
}

TEST(TaskSpec, LoadsSuite) {
    auto suite = load_suite(fixture("suites/embodied.suite"));
    ASSERT_EQ(suite.size(), 3u);
    EXPECT_EQ(suite[2].id, "drink_milk");
}

TEST(TaskPrompt, SofaLayout) {
    const auto& t = eat_bread();
    auto tp = build_task_prompt(t.vocab, t.objects, t.examples, t.id, {});
    auto text = tp.text();
    auto lines = lines_of(text);
    EXPECT_EQ(lines.back(), "def initial_plan_for_eat_bread_on_sofa():");
    EXPECT_EQ(lines[0].rfind("from actions import walk<obj>, find<obj>, grab<obj>", 0), 0u) << lines[0];
    EXPECT_EQ(lines[1].rfind("objects = [\"kitchen\", \"livingroom\"", 0), 0u) << lines[1];
    EXPECT_NE(text.find("# Example tasks\ndef throw_away_apple():"), std::string::npos);
    EXPECT_NE(text.find("# Next Task\n"), std::string::npos);
    for (const auto& shot : tp.few_shot) EXPECT_NO_THROW(dsl::parse_plan(shot));
}

TEST(TaskPrompt, ZeroExamples) {
    const auto& t = eat_bread();
    auto tp = build_task_prompt(t.vocab, t.objects, {}, t.id, {});
    EXPECT_NE(tp.text().find("# Example tasks\n\n# Next Task\n"), std::string::npos);
}

TEST(TaskPrompt, CommentAndAssertAxes) {
    const auto& t = eat_bread();
    PromptOptions keep, strip, noassert, cn;
    strip.comments = CommentMode::None;
    noassert.asserts = false;
    auto table = load_translations(fixture("translations/en_cn.tsv"));
    cn.comments = CommentMode::Cn;
    cn.translations = &table;
    auto k = build_task_prompt(t.vocab, t.objects, t.examples, t.id, keep).text();
    auto s = build_task_prompt(t.vocab, t.objects, t.examples, t.id, strip).text();
    EXPECT_LT(model::count_tokens(s), model::count_tokens(k));
    EXPECT_EQ(s.find("    #"), std::string::npos);
    auto na = build_task_prompt(t.vocab, t.objects, t.examples, t.id, noassert).text();
    EXPECT_EQ(na.find("assert"), std::string::npos);
    auto c = build_task_prompt(t.vocab, t.objects, t.examples, t.id, cn);
    EXPECT_FALSE(c.untranslated);
    EXPECT_NE(c.text().find("# 步骤1：去厨房拿起苹果"), std::string::npos);

    dsl::TranslationTable partial;
    cn.translations = &partial;
    auto fallback = build_task_prompt(t.vocab, t.objects, t.examples, t.id, cn);
    EXPECT_TRUE(fallback.untranslated);
    EXPECT_EQ(fallback.text(), k);
}

TEST(TaskPrompt, NaturalLanguageFormat) {
    const auto& t = eat_bread();
    PromptOptions nl;
    nl.format = PromptFormat::Nl;
    auto tp = build_task_prompt(t.vocab, t.objects, t.examples, t.id, nl);
    for (const auto& l : lines_of(tp.text())) EXPECT_NE(l.rfind("def ", 0), 0u) << l;
    EXPECT_EQ(lines_of(tp.text()).back(), "Plan initial_plan_for_eat_bread_on_sofa:");
    for (std::size_t i = 0; i < t.examples.size(); ++i) EXPECT_EQ(parse_plan_nl(tp.few_shot[i]), t.examples[i]);
    auto code = build_task_prompt(t.vocab, t.objects, t.examples, t.id, {});
    EXPECT_LT(model::count_tokens(code.text()), model::count_tokens(tp.text()));
}

TEST(NlFormat, FixtureCompletionsMatchCode) {
    for (const char* stem : {"eat_bread_on_sofa.initial", "eat_bread_on_sofa.updated", "watch_tv_on_sofa.initial",
                             "watch_tv_on_sofa.updated", "drink_milk.initial"}) {
        std::string s(stem);
        auto code = dsl::parse_plan(read_fixture("completions/" + s + ".plan"));
        auto nl = parse_plan_nl(read_fixture("completions/" + s + ".nl.txt"));
        EXPECT_EQ(nl, code) << s;
        EXPECT_EQ(render_plan_nl(code), read_fixture("completions/" + s + ".nl.txt")) << s;
    }
}

TEST(NlFormat, RejectsFreeText) {
    EXPECT_THROW(parse_plan_nl("Plan p:\nStep 1: Dance wildly.\n"), dsl::ParseError);
    EXPECT_THROW(parse_plan_nl("Just do it.\n"), dsl::ParseError);
    auto loop = dsl::parse_plan("def p():\n    while not visible('sofa'):\n        find('sofa')\n");
    EXPECT_THROW(render_plan_nl(loop), NlUnsupported);
}

TEST(Episode, Sofa) {
    auto backend = sofa_backend();
    auto r = run_episode(eat_bread(), backend);
    EXPECT_FALSE(r.aborted);
    EXPECT_EQ(r.replans_used, 1u);
    ASSERT_EQ(r.traces.size(), 2u);
    ASSERT_EQ(r.transcript.size(), 2u);
    EXPECT_EQ(r.score.sr, 1);
    EXPECT_DOUBLE_EQ(r.score.psr, 1.0);
    ASSERT_TRUE(r.traces[0].failure);
    EXPECT_EQ(r.traces[0].failure->feedback_message, "not close to <sofa> when [SIT]");

    const auto& replan = r.transcript[1].prompt;
    auto block = exec::serialize_error_trace(*r.traces[0].failure, "updated_plan_for_eat_bread_on_sofa");
    EXPECT_NE(replan.find(block), std::string::npos);
    EXPECT_EQ(lines_of(replan).back(), "def updated_plan_for_eat_bread_on_sofa():");
    EXPECT_EQ(replan.find("def initial_plan_for_eat_bread_on_sofa():\n    walk"), std::string::npos);
    EXPECT_EQ(exec::normalize_whitespace(block),
              exec::normalize_whitespace(read_fixture("completions/eat_bread_on_sofa.feedback.txt")));
    EXPECT_EQ(r.usage(), r.transcript[0].usage + r.transcript[1].usage);
}

TEST(Episode, Idempotent) {
    auto b1 = sofa_backend();
    auto b2 = sofa_backend();
    auto r1 = run_episode(eat_bread(), b1);
    auto r2 = run_episode(eat_bread(), b2);
    ASSERT_EQ(r1.transcript.size(), r2.transcript.size());
    for (std::size_t i = 0; i < r1.transcript.size(); ++i) {
        EXPECT_EQ(r1.transcript[i].prompt, r2.transcript[i].prompt);
        EXPECT_EQ(r1.transcript[i].completion, r2.transcript[i].completion);
    }
    EXPECT_EQ(r1.final_state, r2.final_state);
}

TEST(Episode, ZeroBudgetKeepsFailure) {
    auto backend = sofa_backend();
    EpisodeOptions opts;
    opts.budget = 0;
    auto r = run_episode(eat_bread(), backend, opts);
    EXPECT_EQ(r.replans_used, 0u);
    ASSERT_EQ(r.traces.size(), 1u);
    ASSERT_TRUE(r.traces[0].failure);
    EXPECT_EQ(r.traces[0].failure->error_step, "sit('sofa')");
    EXPECT_EQ(r.score.sr, 0);
    EXPECT_DOUBLE_EQ(r.score.psr, 0.0);
}

TEST(Episode, GarbageConsumesBudget) {
    for (std::size_t budget = 0; budget <= 5; ++budget) {
        model::FunctionBackend garbage([](std::string_view, const model::CallContext&) { return "%%% not a plan"; });
        EpisodeOptions opts;
        opts.budget = budget;
        auto r = run_episode(eat_bread(), garbage, opts);
        EXPECT_EQ(r.transcript.size(), budget + 1);
        EXPECT_EQ(r.replans_used, budget);
        for (const auto& tr : r.traces) EXPECT_EQ(tr.failure->kind, exec::FailureKind::Rejected);
        for (std::size_t i = 1; i < r.transcript.size(); ++i) {
            const auto& p = r.transcript[i].prompt;
            EXPECT_NE(p.find("# Previous completion rejected: parse error"), std::string::npos);
            EXPECT_EQ(lines_of(p).back(), "def initial_plan_for_eat_bread_on_sofa():");
        }
    }
}

TEST(Episode, ModelErrorAborts) {
    model::ScriptedBackend empty;
    auto r = run_episode(eat_bread(), empty);
    ASSERT_TRUE(r.aborted);
    EXPECT_TRUE(r.transcript.empty());
    EXPECT_EQ(r.replans_used, 0u);
}

TEST(Episode, NaturalLanguageRun) {
    auto backend = model::ScriptedBackend::load(fixture("scripts/embodied_nl.json"));
    EpisodeOptions opts;
    opts.prompt.format = PromptFormat::Nl;
    auto r = run_episode(eat_bread(), backend, opts);
    EXPECT_EQ(r.replans_used, 1u);
    EXPECT_EQ(r.score.sr, 1);
    for (const auto& e : r.transcript) {
        for (const auto& l : lines_of(e.prompt)) EXPECT_NE(l.rfind("def ", 0), 0u) << l;
    }
    EXPECT_NE(r.transcript[1].prompt.find("The error message: not close to <sofa> when [SIT]."), std::string::npos);
}

TEST(Episode, AssertsOffStripsCompletions) {
    auto backend = sofa_backend();
    EpisodeOptions opts;
    opts.prompt.asserts = false;
    auto r = run_episode(eat_bread(), backend, opts);
    for (const auto& e : r.transcript) EXPECT_EQ(e.prompt.find("assert"), std::string::npos);
    // Without the recovery find('bread') the grab fails first.
    ASSERT_TRUE(r.traces[0].failure);
    EXPECT_EQ(r.traces[0].failure->error_step, "grab('bread')");
}
