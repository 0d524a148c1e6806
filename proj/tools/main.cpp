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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "codeplan/agents/system_prompt.hpp"
#include "codeplan/agents/tool_registry.hpp"
#include "codeplan/dsl/parser.hpp"
#include "codeplan/dsl/render.hpp"
#include "codeplan/eval/gating.hpp"
#include "codeplan/eval/harness.hpp"
#include "codeplan/eval/report.hpp"
#include "codeplan/eval/run_config.hpp"
#include "codeplan/model/http_backend.hpp"
#include "codeplan/model/recording.hpp"
#include "codeplan/replan/nl_format.hpp"
#include "codeplan/replan/task_prompt.hpp"
#include "codeplan/replan/task_spec.hpp"

namespace fs = std::filesystem;
using namespace codeplan;

namespace {

// Exit codes: 0 completed, 1 infrastructure error during the run, 2 bad input.
constexpr int kInfraError = 1;
constexpr int kBadInput = 2;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    eval::RunConfig cfg;
    std::vector<replan::TaskSpec> suite;
    std::optional<model::CostTable> costs;
    std::optional<dsl::TranslationTable> translations;

    eval::HarnessOptions options(const std::string& backend_name) const {
        eval::HarnessOptions o;
        o.config = cfg.ablation;
        o.budget = cfg.budget;
        o.limits = cfg.limits;
        o.parallelism = cfg.parallelism;
        o.costs = costs ? &*costs : nullptr;
        o.cost_model = cfg.cost_model;
        o.translations = translations ? &*translations : nullptr;
        o.backend_name = backend_name;
        return o;
    }
};

Loaded load_inputs(const fs::path& suite, const fs::path& config) {
    Loaded l;
    l.cfg = eval::load_run_config(config);
    l.suite = replan::load_suite(suite);
    if (l.cfg.cost_models) l.costs = model::CostTable::load(*l.cfg.cost_models);
    if (l.cfg.translations) l.translations = replan::load_translations(*l.cfg.translations);
    return l;
}

int finish(const eval::RunReport& report, const fs::path& out, const model::TranscriptStore* store) {
    eval::write_report(out, report);
    if (store) store->save(out / "transcripts.ndjson");
    std::cout << eval::render_table(report);
    for (const auto& v : eval::gating_violations(report)) std::cerr << "gating: " << v << "\n";
    for (const auto& r : report.records) {
        if (r.infra_error) std::cerr << "infrastructure error in " << r.episode_id << ": " << *r.infra_error << "\n";
    }
    std::cout << "wrote " << (out / "report.json").string() << "\n";
    return report.completed ? 0 : kInfraError;
}

int cmd_run(const fs::path& suite, const fs::path& config, const std::string& backend, const fs::path& transcripts,
            const fs::path& out) {
    auto in = load_inputs(suite, config);
    std::unique_ptr<model::ModelBackend> inner;
    if (backend == "scripted") {
        if (!in.cfg.scripts) throw eval::RunConfigError("scripted backend needs \"scripts\" in the config");
        inner = std::make_unique<model::ScriptedBackend>(model::ScriptedBackend::load(*in.cfg.scripts));
    } else if (backend == "http") {
        if (!in.cfg.http) throw eval::RunConfigError("http backend needs an \"http\" section in the config");
        inner = std::make_unique<model::HttpBackend>(*in.cfg.http);
    } else {
        if (transcripts.empty()) throw eval::RunConfigError("replay backend needs --transcripts");
        inner = std::make_unique<model::ReplayBackend>(model::TranscriptStore::load(transcripts));
    }
    model::TranscriptStore store;
    model::RecordingBackend rec(*inner, store);
    auto report = eval::run_suite(in.suite, rec, in.options(backend));
    return finish(report, out, &store);
}

int cmd_replay(const fs::path& suite, const fs::path& config, const fs::path& run_dir, const fs::path& out) {
    auto in = load_inputs(suite, config);
    model::ReplayBackend replay(model::TranscriptStore::load(run_dir / "transcripts.ndjson"));
    auto report = eval::run_suite(in.suite, replay, in.options("replay"));
    int rc = finish(report, out, nullptr);
    fs::path original = run_dir / "report.json";
    if (fs::exists(original)) {
        auto before = eval::load_report(original);
        bool same = eval::records_jsonl(before) == eval::records_jsonl(report);
        std::cout << "records " << (same ? "match" : "differ from") << " " << original.string() << "\n";
        if (!same && rc == 0) rc = kInfraError;
    }
    return rc;
}

int cmd_report(const fs::path& path) {
    fs::path p = fs::is_directory(path) ? path / "report.json" : path;
    auto report = eval::load_report(p);
    std::cout << eval::render_table(report);
    return report.completed ? 0 : kInfraError;
}

int cmd_prompt(const fs::path& task_path, const std::string& format, const std::string& comments, bool no_asserts,
               const fs::path& translations_path) {
    auto task = replan::load_task(task_path);
    if (task.kind == replan::TaskKind::Qa) {
        auto cfg = agents::load_agent_config(task.agent_config);
        cfg.task = task.question;
        std::cout << render_system_prompt(cfg, agents::ToolRegistry::standard());
        return 0;
    }
    replan::PromptOptions opts;
    opts.format = format == "nl" ? replan::PromptFormat::Nl : replan::PromptFormat::Code;
    opts.comments = comments == "none" ? replan::CommentMode::None
                    : comments == "cn" ? replan::CommentMode::Cn
                                       : replan::CommentMode::En;
    opts.asserts = !no_asserts;
    std::optional<dsl::TranslationTable> table;
    if (!translations_path.empty()) {
        table = replan::load_translations(translations_path);
        opts.translations = &*table;
    }
    auto tp = replan::build_task_prompt(task.vocab, task.objects, task.examples, task.id, opts);
    std::cout << tp.text() << "\n";
    if (tp.untranslated) std::cerr << "note: some comments had no translation and were kept in English\n";
    return 0;
}

int cmd_parse(const fs::path& plan_path, bool nl, bool strip_comments) {
    std::string text = slurp(plan_path);
    auto plan = nl ? replan::parse_plan_nl(text) : dsl::parse_plan(text);
    std::cout << dsl::render_plan(plan, strip_comments ? dsl::CommentStyle::strip() : dsl::CommentStyle::keep());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"codeplan: plan, execute, replan and evaluate"};
    app.require_subcommand(1);

    fs::path suite, config, out, transcripts, run_dir, report_path, task_path, plan_path, translations;
    std::string backend = "scripted", format = "code", comments = "en";
    bool no_asserts = false, nl = false, strip = false;

    auto* run = app.add_subcommand("run", "run a suite and write report.json, records.jsonl, transcripts.ndjson");
    run->add_option("suite", suite, "suite file")->required()->check(CLI::ExistingFile);
    run->add_option("config", config, "run config JSON")->required()->check(CLI::ExistingFile);
    run->add_option("-b,--backend", backend, "model backend")->check(CLI::IsMember({"scripted", "replay", "http"}));
    run->add_option("--transcripts", transcripts, "transcripts.ndjson for the replay backend");
    run->add_option("-o,--out", out, "output directory")->required();

    auto* rep = app.add_subcommand("replay", "re-run a suite from a run directory's recorded transcripts");
    rep->add_option("suite", suite, "suite file")->required()->check(CLI::ExistingFile);
    rep->add_option("config", config, "run config JSON")->required()->check(CLI::ExistingFile);
    rep->add_option("run_dir", run_dir, "directory of an earlier run")->required()->check(CLI::ExistingDirectory);
    rep->add_option("-o,--out", out, "output directory")->required();

    auto* show = app.add_subcommand("report", "print the aggregates of a report");
    show->add_option("report", report_path, "report.json or its directory")->required()->check(CLI::ExistingPath);

    auto* prompt = app.add_subcommand("prompt", "print the initial prompt for a task");
    prompt->add_option("task", task_path, "task file")->required()->check(CLI::ExistingFile);
    prompt->add_option("--format", format)->check(CLI::IsMember({"code", "nl"}));
    prompt->add_option("--comments", comments)->check(CLI::IsMember({"none", "en", "cn"}));
    prompt->add_flag("--no-asserts", no_asserts);
    prompt->add_option("--translations", translations)->check(CLI::ExistingFile);

    auto* parse = app.add_subcommand("parse", "parse a plan and print its canonical form");
    parse->add_option("plan", plan_path, "plan file")->required()->check(CLI::ExistingFile);
    parse->add_flag("--nl", nl, "input is a natural-language plan");
    parse->add_flag("--strip-comments", strip);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(suite, config, backend, transcripts, out);
        if (*rep) return cmd_replay(suite, config, run_dir, out);
        if (*show) return cmd_report(report_path);
        if (*prompt) return cmd_prompt(task_path, format, comments, no_asserts, translations);
        if (*parse) return cmd_parse(plan_path, nl, strip);
    } catch (const dsl::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}
