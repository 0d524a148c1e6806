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
#include <cmath>
#include <filesystem>
#include <random>

#include "codeplan/dsl/parser.hpp"
#include "codeplan/eval/ablation.hpp"
#include "codeplan/eval/gating.hpp"
#include "codeplan/eval/harness.hpp"
#include "codeplan/eval/metrics.hpp"
#include "codeplan/eval/report.hpp"
#include "codeplan/eval/run_config.hpp"
#include "codeplan/replan/task_prompt.hpp"
#include "codeplan/world/world_files.hpp"
#include "fixtures.hpp"

using namespace codeplan;
using namespace codeplan::eval;
using codeplan::testing::fixture;
using codeplan::testing::read_fixture;

namespace {

const std::vector<replan::TaskSpec>& embodied_suite() {
    static const auto s = replan::load_suite(fixture("suites/embodied.suite"));
    return s;
}

const std::vector<replan::TaskSpec>& all_suite() {
    static const auto s = replan::load_suite(fixture("suites/all.suite"));
    return s;
}

const dsl::TranslationTable& translations() {
    static const auto t = replan::load_translations(fixture("translations/en_cn.tsv"));
    return t;
}

model::ScriptedBackend backend_for(replan::PromptFormat f) {
    return model::ScriptedBackend::load(
        fixture(f == replan::PromptFormat::Nl ? "scripts/embodied_nl.json" : "scripts/all_code.json"));
}

// Brute force: pair each prediction token with an unused equal gold token.
std::pair<int, double> overlap_oracle(const std::vector<std::string>& p, const std::vector<std::string>& g) {
    int em = p == g ? 1 : 0;
    if (p.empty() || g.empty()) return {em, static_cast<double>(em)};
    std::vector<bool> used(g.size(), false);
    long common = 0;
    for (const auto& w : p) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (!used[j] && g[j] == w) {
                used[j] = true;
                ++common;
                break;
            }
        }
    }
    return {em, 2.0 * static_cast<double>(common) / static_cast<double>(p.size() + g.size())};
}

std::string random_answer(std::mt19937& rng) {
    static const std::vector<std::string> words = {"Edge", "computing", "boom", "the", "A", "an", "Paris", "paris,",
                                                   "AI", "demand.", "(policy)", "growth", "drivers!", "The", "x"};
    std::string s;
    int n = static_cast<int>(rng() % 7);
    for (int i = 0; i < n; ++i) {
        if (i) s += (rng() % 4 == 0) ? "  " : " ";
        s += words[rng() % words.size()];
    }
    return s;
}

}  // namespace

TEST(Metrics, ExecFraction) {
    exec::ExecutionTrace all_ok;
    all_ok.attempted = all_ok.succeeded = 6;
    EXPECT_DOUBLE_EQ(exec_fraction(all_ok), 1.0);
    exec::ExecutionTrace empty;
    EXPECT_DOUBLE_EQ(exec_fraction(empty), 1.0);

    const auto& t = embodied_suite()[0];
    auto [s, trace] = exec::execute(dsl::parse_plan(read_fixture("completions/eat_bread_on_sofa.initial.plan")), t.world);
    EXPECT_DOUBLE_EQ(exec_fraction(trace), 4.0 / 5.0);
    auto [s2, trace2] = exec::execute(dsl::parse_plan(read_fixture("completions/eat_bread_on_sofa.updated.plan")), s);
    EXPECT_DOUBLE_EQ(exec_fraction(std::vector<exec::ExecutionTrace>{trace, trace2}), 7.0 / 8.0);

    auto comments = dsl::parse_plan("def p():\n    # one\n    # two\n");
    EXPECT_DOUBLE_EQ(exec_fraction(exec::execute(comments, t.world).second), 1.0);
}

TEST(Metrics, QaScoreExamples) {
    auto a = qa_score("Edge computing boom", "Edge computing boom");
    EXPECT_EQ(a.em, 1);
    EXPECT_DOUBLE_EQ(a.f1, 1.0);
    auto b = qa_score("edge computing", "edge computing boom");
    EXPECT_EQ(b.em, 0);
    EXPECT_DOUBLE_EQ(b.f1, 0.8);
    auto c = qa_score("", "Paris");
    EXPECT_EQ(c.em, 0);
    EXPECT_DOUBLE_EQ(c.f1, 0.0);
    EXPECT_EQ(qa_score("The Paris!", "paris").em, 1);
    EXPECT_EQ(normalize_answer("  The  AI, chip's   market. "), "ai chips market");
}

TEST(Metrics, QaScoreMatchesBruteForce) {
    std::mt19937 rng(8);
    for (int i = 0; i < 500; ++i) {
        auto p = random_answer(rng);
        auto g = random_answer(rng);
        auto got = qa_score(p, g);
        auto [em, f1] = overlap_oracle(answer_tokens(p), answer_tokens(g));
        ASSERT_EQ(got.em, em) << p << " | " << g;
        ASSERT_EQ(got.f1, f1) << p << " | " << g;
        ASSERT_EQ(got.f1, qa_score(g, p).f1);
        if (got.em) ASSERT_EQ(got.f1, 1.0);
    }
}

TEST(Metrics, MeanStd) {
    auto m = mean_std({2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0});
    EXPECT_DOUBLE_EQ(m.mean, 5.0);
    EXPECT_NEAR(m.std, std::sqrt(32.0 / 7.0), 1e-12);
    EXPECT_DOUBLE_EQ(mean_std({3.0}).std, 0.0);
    EXPECT_DOUBLE_EQ(mean_std({}).mean, 0.0);
}

TEST(Ablation, ElevenRows) {
    const auto& rows = ablation_presets();
    ASSERT_EQ(rows.size(), 11u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            auto a = rows[i], b = rows[j];
            a.name = b.name = "";
            EXPECT_FALSE(a == b) << i + 1 << " vs " << j + 1;
        }
        EXPECT_EQ(parse_ablation(to_json(rows[i])), rows[i]);
    }
    const auto& row3 = ablation_preset(3);
    EXPECT_EQ(row3.format, replan::PromptFormat::Code);
    EXPECT_FALSE(row3.assert_enabled);
    EXPECT_FALSE(row3.replan_enabled);
    EXPECT_EQ(ablation_preset(7).comments, replan::CommentMode::Cn);
    EXPECT_EQ(ablation_preset(1).format, replan::PromptFormat::Nl);

    auto cfg = parse_ablation(nlohmann::ordered_json{{"preset", 11}, {"repeats", 3}, {"seeds", {1, 2}}});
    EXPECT_TRUE(cfg.assert_enabled && cfg.replan_enabled);
    EXPECT_EQ(cfg.repeats, 3u);
    EXPECT_EQ(cfg.seed_for(2), 1u);
    EXPECT_THROW(parse_ablation(nlohmann::ordered_json{{"repeats", 0}}), AblationError);
    EXPECT_THROW(parse_ablation(nlohmann::ordered_json{{"preset", 12}}), AblationError);
    EXPECT_THROW(parse_ablation(nlohmann::ordered_json{{"format", "nl"}, {"comments", "cn"}}), AblationError);
    EXPECT_THROW(parse_ablation(nlohmann::ordered_json{{"verbose", true}}), AblationError);
}

TEST(Harness, RepeatsAndRecomputedAggregates) {
    auto backend = backend_for(replan::PromptFormat::Code);
    HarnessOptions opts;
    opts.config = ablation_preset(11);
    opts.config.repeats = 2;
    auto report = run_suite(embodied_suite(), backend, opts);
    ASSERT_EQ(report.records.size(), 6u);
    EXPECT_TRUE(report.completed);
    // Hand recomputation: each repeat's suite mean, then across repeats.
    double sr[2] = {0, 0}, psr[2] = {0, 0}, tok[2] = {0, 0};
    for (const auto& r : report.records) {
        sr[r.repeat] += *r.sr / 3.0;
        psr[r.repeat] += *r.psr / 3.0;
        tok[r.repeat] += static_cast<double>(r.usage.total());
    }
    EXPECT_DOUBLE_EQ(report.aggregates.sr->mean, (sr[0] + sr[1]) / 2.0);
    EXPECT_DOUBLE_EQ(report.aggregates.psr->mean, (psr[0] + psr[1]) / 2.0);
    EXPECT_DOUBLE_EQ(report.aggregates.tokens_per_run.mean, (tok[0] + tok[1]) / 2.0);
    EXPECT_DOUBLE_EQ(report.aggregates.tokens_per_task.mean, (tok[0] + tok[1]) / 6.0);
    EXPECT_DOUBLE_EQ(report.aggregates.sr->std, 0.0);  // scripted runs repeat exactly
    EXPECT_FALSE(report.aggregates.em);
    EXPECT_DOUBLE_EQ(report.aggregates.sr->mean, 1.0);

    opts.config.repeats = 1;
    auto once = run_suite(embodied_suite(), backend, opts);
    EXPECT_DOUBLE_EQ(once.aggregates.sr->std, 0.0);
    EXPECT_DOUBLE_EQ(once.aggregates.tokens_per_task.std, 0.0);
}

TEST(Harness, CodeOnlyRowMakesOneCallWithoutAsserts) {
    auto backend = backend_for(replan::PromptFormat::Code);
    HarnessOptions opts;
    opts.config = ablation_preset(3);
    auto report = run_suite(embodied_suite(), backend, opts);
    for (const auto& r : report.records) {
        EXPECT_EQ(r.model_calls, 1u) << r.task_id;
        for (const auto& e : r.transcript) EXPECT_FALSE(has_assertion(e.prompt, replan::PromptFormat::Code));
    }
    EXPECT_TRUE(gating_violations(report).empty());
}

TEST(Harness, AllTableRowsPassGating) {
    for (std::size_t row = 1; row <= 11; ++row) {
        HarnessOptions opts;
        opts.config = ablation_preset(row);
        opts.translations = &translations();
        auto backend = backend_for(opts.config.format);
        auto report = run_suite(embodied_suite(), backend, opts);
        auto v = gating_violations(report);
        EXPECT_TRUE(v.empty()) << "row " << row << ": " << v.front();
    }
}

TEST(Harness, GatingCatchesViolations) {
    auto backend = backend_for(replan::PromptFormat::Code);
    HarnessOptions opts;
    opts.config = ablation_preset(11);
    auto report = run_suite(embodied_suite(), backend, opts);
    report.config = ablation_preset(3);  // claim asserts and replanning were off
    auto v = gating_violations(report);
    EXPECT_FALSE(v.empty());
    EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const std::string& s) {
        return s.find("model calls with replanning off") != std::string::npos;
    }));
    EXPECT_TRUE(std::any_of(v.begin(), v.end(),
                            [](const std::string& s) { return s.find("assertion in prompt") != std::string::npos; }));
}

TEST(Harness, MixedSuiteRoutesByKind) {
    auto backend = backend_for(replan::PromptFormat::Code);
    model::CostTable costs = model::CostTable::load(fixture("configs/cost_models.json"));
    HarnessOptions opts;
    opts.config = ablation_preset(11);
    opts.costs = &costs;
    opts.cost_model = "gemini-2.5-flash";
    auto report = run_suite(all_suite(), backend, opts);
    ASSERT_EQ(report.records.size(), 6u);
    EXPECT_TRUE(report.completed);
    EXPECT_EQ(report.aggregates.embodied, 3u);
    EXPECT_EQ(report.aggregates.qa, 3u);
    const auto& chip = report.records[3];
    EXPECT_EQ(chip.task_id, "ai_chip_drivers");
    EXPECT_EQ(chip.em, 1);
    EXPECT_EQ(chip.replans, 1u);
    EXPECT_FALSE(chip.sr);
    ASSERT_TRUE(chip.cost);
    EXPECT_EQ(*chip.cost, costs.cost(chip.usage, "gemini-2.5-flash"));
    ASSERT_TRUE(report.aggregates.cost_per_run_usd);
    EXPECT_GT(report.aggregates.cost_per_run_usd->mean, 0.0);
    EXPECT_EQ(report.records[4].f1, qa_score("The Eiffel Tower is located in Paris.", "Paris").f1);
    EXPECT_TRUE(gating_violations(report).empty());
}

TEST(Harness, ParallelMatchesSequential) {
    HarnessOptions opts;
    opts.config = ablation_preset(11);
    opts.config.repeats = 3;
    auto b1 = backend_for(replan::PromptFormat::Code);
    auto seq = run_suite(all_suite(), b1, opts);
    opts.parallelism = 4;
    auto b2 = backend_for(replan::PromptFormat::Code);
    auto par = run_suite(all_suite(), b2, opts);
    EXPECT_EQ(to_json(seq).dump(), to_json(par).dump());
}

TEST(Harness, InfrastructureErrorsAreRecorded) {
    model::ScriptedBackend empty;
    HarnessOptions opts;
    auto report = run_suite(all_suite(), empty, opts);
    ASSERT_EQ(report.records.size(), 6u);
    EXPECT_FALSE(report.completed);
    for (const auto& r : report.records) EXPECT_TRUE(r.infra_error) << r.task_id;
}

TEST(Report, RoundTripAndRecompute) {
    auto backend = backend_for(replan::PromptFormat::Code);
    HarnessOptions opts;
    opts.config = ablation_preset(9);
    opts.config.repeats = 2;
    auto report = run_suite(all_suite(), backend, opts);
    auto js = to_json(report);
    EXPECT_EQ(js["schema"], kReportSchema);
    auto back = report_from_json(nlohmann::ordered_json::parse(js.dump()));
    EXPECT_EQ(to_json(back).dump(), js.dump());
    auto again = aggregate(back.records, back.config.repeats);
    EXPECT_EQ(to_json(again).dump(), js["aggregates"].dump());

    auto lines = records_jsonl(report);
    EXPECT_EQ(static_cast<std::size_t>(std::count(lines.begin(), lines.end(), '\n')), report.records.size());
    auto table = render_table(report);
    EXPECT_NE(table.find("SR"), std::string::npos);
    EXPECT_NE(table.find("tokens/run"), std::string::npos);
    EXPECT_THROW(report_from_json(nlohmann::ordered_json{{"schema", "other"}}), std::runtime_error);
}

TEST(RunConfig, LoadsAndResolvesPaths) {
    auto c = load_run_config(fixture("configs/run_code_full.json"));
    EXPECT_EQ(c.ablation.name, ablation_preset(11).name);
    EXPECT_EQ(c.ablation.repeats, 2u);
    EXPECT_EQ(c.parallelism, 2u);
    ASSERT_TRUE(c.cost_models);
    EXPECT_TRUE(std::filesystem::exists(*c.cost_models));
    ASSERT_TRUE(c.scripts);
    EXPECT_TRUE(std::filesystem::exists(*c.scripts));
    EXPECT_FALSE(c.http);

    auto h = load_run_config(fixture("configs/run_http_example.json"));
    ASSERT_TRUE(h.http);
    EXPECT_EQ(h.http->model, "gemini-2.5-flash");
}

TEST(RunConfig, RejectsBadInput) {
    using J = nlohmann::ordered_json;
    EXPECT_THROW(parse_run_config(J{{"colour", "red"}}, "."), RunConfigError);
    EXPECT_THROW(parse_run_config(J{{"budget", -1}}, "."), RunConfigError);
    EXPECT_THROW(parse_run_config(J{{"parallelism", 0}}, "."), RunConfigError);
    EXPECT_THROW(parse_run_config(J{{"cost_model", "gpt-4.1"}}, "."), RunConfigError);
    EXPECT_THROW(parse_run_config(J{{"ablation", {{"repeats", 0}}}}, "."), RunConfigError);
    EXPECT_THROW(parse_run_config(J{{"http", {{"model", "m"}}}}, "."), RunConfigError);
    EXPECT_THROW(parse_run_config(J{{"limits", {{"max_steps", 1}, {"depth", 2}}}}, "."), RunConfigError);
    auto c = parse_run_config(J{{"budget", 0}, {"limits", {{"max_loop_iters", 5}}}}, "/x");
    EXPECT_EQ(c.budget, 0u);
    EXPECT_EQ(c.limits.max_loop_iters, 5u);
    EXPECT_EQ(c.limits.max_steps, exec::ExecLimits{}.max_steps);
}
