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

#include <map>
#include <random>

#include "codeplan/dsl/lexer.hpp"
#include "codeplan/dsl/parser.hpp"
#include "codeplan/dsl/render.hpp"
#include "codeplan/dsl/validate.hpp"
#include "codeplan/dsl/vocabulary.hpp"
#include "fixtures.hpp"
#include "plan_generator.hpp"

using namespace codeplan::dsl;
using codeplan::testing::PlanGenerator;
using codeplan::testing::read_fixture;

namespace {

PlanAst fig2_initial() { return parse_plan(read_fixture("completions/eat_bread_on_sofa.initial.plan")); }

std::size_t count_lines_starting(const std::string& text, std::string_view lead) {
    std::size_t n = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string_view line(text.data() + pos, nl - pos);
        auto first = line.find_first_not_of(' ');
        if (first != std::string_view::npos && line.substr(first, lead.size()) == lead) ++n;
        pos = nl + 1;
    }
    return n;
}

void expect_parse_error(std::string_view src, ParseErrorKind kind, int line) {
    try {
        parse_plan(src);
        FAIL() << "expected ParseError for:\n" << src;
    } catch (const ParseError& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
        EXPECT_EQ(e.line(), line) << e.what();
    }
}

}  // namespace

TEST(Lexer, TokenizesCallWithQuotes) {
    auto toks = tokenize_line("walk('livingroom')");
    ASSERT_TRUE(toks);
    ASSERT_EQ(toks->size(), 5u);
    EXPECT_EQ((*toks)[0].kind, TokenKind::Identifier);
    EXPECT_EQ((*toks)[2].kind, TokenKind::String);
    EXPECT_EQ((*toks)[2].text, "livingroom");
    EXPECT_EQ((*toks)[4].kind, TokenKind::End);
}

TEST(Lexer, RejectsUnterminatedString) { EXPECT_FALSE(tokenize_line("walk('x)")); }

TEST(Lexer, QuoteStringEscapes) {
    EXPECT_EQ(quote_string("it's", '\''), "'it\\'s'");
    EXPECT_EQ(quote_string("a\nb", '"'), "\"a\\nb\"");
}

TEST(Parser, SofaInitialStructure) {
    auto plan = fig2_initial();
    EXPECT_EQ(plan.name, "initial_plan_for_eat_bread_on_sofa");
    ASSERT_EQ(plan.body.size(), 10u);
    EXPECT_TRUE(plan.body[0].is<Comment>());
    EXPECT_EQ(plan.body[0].as<Comment>()->text, "Step 1: Locate sofa and bread");
    const auto* a = plan.body[4].as<AssertRecover>();
    ASSERT_NE(a, nullptr);
    EXPECT_EQ(a->predicate.relation, Relation::Close);
    EXPECT_EQ(a->predicate.subject, "bread");
    EXPECT_EQ(a->predicate.form, PredicateForm::To);
    ASSERT_EQ(a->recovery.size(), 1u);
    EXPECT_EQ(a->recovery[0].as<ActionCall>()->name, "find");
    EXPECT_EQ(count_statements(plan.body, false), 7u);
}

TEST(Parser, LineNumbersMatchSource) {
    auto plan = fig2_initial();
    EXPECT_EQ(plan.body[0].line, 2);
    EXPECT_EQ(plan.body[1].line, 3);
    EXPECT_EQ(plan.body[4].line, 6);
    EXPECT_EQ(plan.body[4].as<AssertRecover>()->recovery[0].line, 7);
    EXPECT_EQ(plan.body[5].line, 8);
    EXPECT_EQ(plan.body.back().line, 12);
}

TEST(Parser, AcceptsTwoSpaceIndentAndContinuations) {
    auto plan = parse_plan(
        "def p():\n"
        "  x = GoogleSearchTool(\n"
        "    \"AI chip\"\n"
        "  )\n"
        "  while not visible('sofa'):\n"
        "    find('sofa')\n"
        "    if too_many_pages_scrolled: break\n"
        "  final_answer(x[0]['url'])\n");
    ASSERT_EQ(plan.body.size(), 3u);
    const auto* loop = plan.body[1].as<Loop>();
    ASSERT_NE(loop, nullptr);
    EXPECT_TRUE(loop->guard.negated);
    ASSERT_TRUE(loop->break_when);
    EXPECT_EQ(std::get<FlagRef>(loop->break_when->test).name, "too_many_pages_scrolled");
    const auto* ret = plan.body[2].as<Return>();
    ASSERT_NE(ret, nullptr);
    EXPECT_EQ(ret->value.path.size(), 2u);
}

TEST(Parser, MethodPredicate) {
    auto p = parse_predicate("TextInspectorTool.contains(\"growth driver\")");
    EXPECT_EQ(p.form, PredicateForm::Method);
    EXPECT_EQ(p.owner, "TextInspectorTool");
    EXPECT_EQ(p.relation, Relation::Contains);
    EXPECT_EQ(p.subject, "growth driver");
}

TEST(Parser, GoalPredicatesNeedFlagMode) {
    EXPECT_EQ(parse_predicate("sat_on(sofa)", true).relation, Relation::SatOn);
    EXPECT_THROW(parse_predicate("sat_on('sofa')"), ParseError);
}

TEST(Parser, ErrorKindsAndLines) {
    expect_parse_error("plan():\n    walk('x')\n", ParseErrorKind::BadHeader, 1);
    expect_parse_error("def p():\n", ParseErrorKind::EmptyBody, 1);
    expect_parse_error("def p():\n    walk('x')\n      grab('x')\n", ParseErrorKind::BadIndent, 3);
    expect_parse_error("def p():\n   walk('x')\n", ParseErrorKind::BadIndent, 2);
    expect_parse_error("def p():\n    walk('x')\n    else:\n        grab('x')\n", ParseErrorKind::DanglingElse, 3);
    expect_parse_error("def p():\n    walk('x')\n    for x in y:\n", ParseErrorKind::UnknownConstruct, 3);
    expect_parse_error("def p():\n    walk('x')\nwalk('y')\n", ParseErrorKind::UnknownConstruct, 3);
}

TEST(Parser, DepthLimit) {
    std::string ok = "def p():\n"
                     "    if a:\n"
                     "        if b:\n"
                     "            if c:\n"
                     "                walk('x')\n";
    EXPECT_NO_THROW(parse_plan(ok));
    std::string deep = ok + "                if d:\n                    walk('y')\n";
    expect_parse_error(deep, ParseErrorKind::BadIndent, 7);
}

TEST(Parser, CompletionGetsHeader) {
    auto plan = parse_completion("```python\n    walk('livingroom')\n```\n", "def updated_plan():");
    EXPECT_EQ(plan.name, "updated_plan");
    ASSERT_EQ(plan.body.size(), 1u);
}

TEST(Render, CanonicalIsFixedPoint) {
    auto plan = fig2_initial();
    std::string once = render_plan(plan);
    EXPECT_EQ(render_plan(parse_plan(once)), once);
    EXPECT_EQ(once, read_fixture("completions/eat_bread_on_sofa.initial.plan"));
}

TEST(Render, StripRemovesOnlyComments) {
    auto plan = fig2_initial();
    std::string stripped = render_plan(plan, CommentStyle::strip());
    EXPECT_EQ(count_lines_starting(stripped, "#"), 0u);
    auto reparsed = parse_plan(stripped);
    EXPECT_EQ(reparsed.body.size(), 6u);
    EXPECT_EQ(count_statements(reparsed.body, false), count_statements(plan.body, false));
}

TEST(Render, TranslateReplacesEveryComment) {
    auto plan = fig2_initial();
    TranslationTable t{{"Step 1: Locate sofa and bread", "步骤1：找到沙发和面包"},
                       {"Step 2: Pick up the bread", "步骤2：拿起面包"},
                       {"Step 3: Sit on the sofa", "步骤3：坐在沙发上"},
                       {"Step 4: Eat the bread", "步骤4：吃面包"}};
    auto out = parse_plan(render_plan(plan, CommentStyle::translate(t)));
    ASSERT_EQ(out.body.size(), plan.body.size());
    EXPECT_EQ(out.body[0].as<Comment>()->text, "步骤1：找到沙发和面包");
    for (std::size_t i = 0; i < plan.body.size(); ++i) {
        if (!plan.body[i].is<Comment>()) EXPECT_EQ(out.body[i], plan.body[i]);
    }
    t.erase("Step 4: Eat the bread");
    EXPECT_THROW(render_plan(plan, CommentStyle::translate(t)), MissingTranslation);
}

TEST(Render, RandomPlansRoundTrip) {
    PlanGenerator gen(20260417u);
    for (int i = 0; i < 300; ++i) {
        PlanAst plan = gen.plan();
        std::string text = render_plan(plan);
        PlanAst back;
        ASSERT_NO_THROW(back = parse_plan(text)) << text;
        ASSERT_EQ(back, plan) << text;
    }
}

TEST(Vocabulary, ParsesKindsAndRejectsJunk) {
    auto v = Vocabulary::parse("# x\naction VisitTool/1 text\naction walk/1\nobject sofa\n");
    ASSERT_NE(v.find_action("VisitTool"), nullptr);
    EXPECT_EQ(v.find_action("VisitTool")->args[0], ArgKind::Text);
    EXPECT_EQ(v.find_action("walk")->args[0], ArgKind::Object);
    EXPECT_TRUE(v.has_object("sofa"));
    EXPECT_THROW(Vocabulary::parse("action walk/2 obj\n"), VocabularyError);
    EXPECT_THROW(Vocabulary::parse("thing x\n"), VocabularyError);
}

TEST(Validate, SofaPlanIsClean) {
    auto vocab = Vocabulary::load(codeplan::testing::fixture("vocab/eat_bread.vocab"));
    auto report = validate_plan(fig2_initial(), vocab);
    EXPECT_TRUE(report.ok()) << report.summary();
}

// Each mutation injects exactly one violation of a known kind at a known line;
// the expected report is the injected list in document order.
TEST(Validate, InjectedViolationsAreReportedExactly) {
    auto vocab = Vocabulary::load(codeplan::testing::fixture("vocab/eat_bread.vocab"));
    const PlanAst base = fig2_initial();
    std::mt19937 rng(7);

    for (int round = 0; round < 50; ++round) {
        PlanAst plan = base;
        std::vector<Statement*> targets;
        for (auto& st : plan.body) {
            if (st.is<ActionCall>() || st.is<AssertRecover>()) targets.push_back(&st);
        }
        std::shuffle(targets.begin(), targets.end(), rng);
        std::size_t k = 1 + rng() % 3;
        std::vector<Violation> injected;
        for (std::size_t j = 0; j < k; ++j) {
            Statement& st = *targets[j];
            if (auto* a = std::get_if<AssertRecover>(&st.node)) {
                a->predicate.subject = "spaceship";
                injected.push_back({ViolationKind::UndeclaredObject, st.line, ""});
                continue;
            }
            auto& call = std::get<ActionCall>(st.node);
            switch (rng() % 5) {
                case 0:
                    call.name = "teleport";
                    injected.push_back({ViolationKind::UnknownAction, st.line, ""});
                    break;
                case 1:
                    call.args.push_back({"", Literal{std::string("sofa"), '\''}});
                    injected.push_back({ViolationKind::ArityMismatch, st.line, ""});
                    break;
                case 2:
                    call.args[0].value = Literal{std::string("moon"), '\''};
                    injected.push_back({ViolationKind::UndeclaredObject, st.line, ""});
                    break;
                case 3:
                    call.args[0].value = Literal{std::int64_t{3}, '\''};
                    injected.push_back({ViolationKind::ArgumentKind, st.line, ""});
                    break;
                default:
                    call.args[0].value = VarRef{"ghost"};
                    injected.push_back({ViolationKind::UnboundVariable, st.line, ""});
                    break;
            }
        }
        std::sort(injected.begin(), injected.end(), [](const Violation& a, const Violation& b) {
            return a.line < b.line;
        });
        auto report = validate_plan(plan, vocab);
        ASSERT_EQ(report.violations.size(), injected.size()) << report.summary();
        for (std::size_t j = 0; j < injected.size(); ++j) {
            EXPECT_EQ(report.violations[j].kind, injected[j].kind) << report.summary();
            EXPECT_EQ(report.violations[j].line, injected[j].line) << report.summary();
        }
        // The same mutations survive a render/parse cycle.
        auto again = validate_plan(parse_plan(render_plan(plan)), vocab);
        EXPECT_EQ(again.violations.size(), injected.size());
    }
}

TEST(Validate, BindingsScopeForward) {
    Vocabulary vocab = Vocabulary::parse("action walk/1\nobject sofa\n");
    auto plan = parse_plan("def p():\n    walk(room)\n    room = 'sofa'\n    walk(room)\n");
    auto r = validate_plan(plan, vocab);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].kind, ViolationKind::UnboundVariable);
    EXPECT_EQ(r.violations[0].line, 2);
}
