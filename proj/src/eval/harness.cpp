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

#include "codeplan/eval/harness.hpp"

#include <atomic>
#include <thread>

#include "codeplan/agents/orchestrator.hpp"

namespace codeplan::eval {

void QaResources::load_for(const replan::TaskSpec& task) {
    if (task.kind != replan::TaskKind::Qa) return;
    const std::string dir = task.corpus_dir.lexically_normal().string();
    if (!corpora.count(dir)) corpora[dir] = std::make_shared<const tools::Corpus>(tools::Corpus::load_dir(dir));
    const std::string cfg = task.agent_config.lexically_normal().string();
    if (!configs.count(cfg)) configs[cfg] = agents::load_agent_config(cfg);
}

namespace {

const agents::ToolRegistry& shared_registry() {
    static const agents::ToolRegistry r = agents::ToolRegistry::standard();
    return r;
}

void run_embodied(const replan::TaskSpec& task, model::ModelBackend& backend, const HarnessOptions& opts,
                  TaskRecord& rec) {
    replan::EpisodeOptions eo;
    eo.prompt = prompt_options(opts.config, opts.translations);
    eo.budget = opts.config.replan_enabled ? opts.budget : 0;
    eo.limits = opts.limits;
    eo.episode_id = rec.episode_id;
    auto r = replan::run_episode(task, backend, eo);
    rec.sr = r.score.sr;
    rec.psr = r.score.psr;
    rec.exec = exec_fraction(r.traces);
    rec.usage = r.usage();
    rec.replans = r.replans_used;
    rec.model_calls = r.transcript.size();
    rec.untranslated_comments = r.untranslated_comments;
    rec.transcript = std::move(r.transcript);
    if (r.aborted) {
        rec.abort_reason = *r.aborted;
        rec.infra_error = "backend: " + *r.aborted;
    }
}

void run_qa(const replan::TaskSpec& task, model::ModelBackend& backend, const HarnessOptions& opts, TaskRecord& rec,
            QaResources& res) {
    const auto& corpus = *res.corpora.at(task.corpus_dir.lexically_normal().string());
    agents::AgentConfig cfg = res.configs.at(task.agent_config.lexically_normal().string());
    cfg.task = task.question;
    agents::AgentEpisodeOptions ao;
    ao.budget = opts.config.replan_enabled ? opts.budget : 0;
    ao.limits = opts.limits;
    ao.episode_id = rec.episode_id;
    auto r = agents::run_agent_episode(cfg, shared_registry(), corpus, backend, task.id, ao);
    rec.prediction = r.prediction;
    auto score = qa_score(r.prediction, task.answer);
    rec.em = score.em;
    rec.f1 = score.f1;
    rec.usage = r.usage();
    rec.replans = r.replans_used;
    rec.model_calls = r.transcript.size();
    rec.transcript = std::move(r.transcript);
    if (r.abort) {
        rec.abort_reason = r.abort->reason;
        if (r.abort->backend_failure) rec.infra_error = r.abort->reason;
    }
}

}  // namespace

TaskRecord run_task(const replan::TaskSpec& task, model::ModelBackend& backend, const HarnessOptions& opts,
                    std::size_t repeat, QaResources& resources) {
    TaskRecord rec;
    rec.task_id = task.id;
    rec.kind = task.kind;
    rec.repeat = repeat;
    rec.seed = opts.config.seed_for(repeat);
    rec.episode_id = task.id + "#" + std::to_string(repeat);
    try {
        if (task.kind == replan::TaskKind::Embodied) {
            run_embodied(task, backend, opts, rec);
        } else {
            resources.load_for(task);
            run_qa(task, backend, opts, rec, resources);
        }
        if (opts.costs && opts.costs->contains(opts.cost_model)) rec.cost = opts.costs->cost(rec.usage, opts.cost_model);
    } catch (const std::exception& e) {
        rec.infra_error = e.what();
    }
    return rec;
}

Aggregates aggregate(const std::vector<TaskRecord>& records, std::size_t repeats) {
    Aggregates a;
    a.records = records.size();
    a.repeats = repeats;
    std::vector<double> sr, psr, ex, em, f1, tok_task, tok_run, replans, cost;
    bool priced = !records.empty();
    for (const auto& r : records) {
        priced = priced && r.cost.has_value();
        if (r.kind == replan::TaskKind::Embodied) {
            ++a.embodied;
        } else {
            ++a.qa;
        }
    }
    for (std::size_t rep = 0; rep < repeats; ++rep) {
        double s_sr = 0, s_psr = 0, s_ex = 0, s_em = 0, s_f1 = 0, s_tok = 0, s_rep = 0;
        std::size_t n = 0, n_emb = 0, n_qa = 0;
        model::Picodollars s_cost = 0;
        for (const auto& r : records) {
            if (r.repeat != rep) continue;
            ++n;
            s_tok += static_cast<double>(r.usage.total());
            s_rep += static_cast<double>(r.replans);
            if (r.cost) s_cost += *r.cost;
            if (r.kind == replan::TaskKind::Embodied) {
                ++n_emb;
                s_sr += r.sr.value_or(0.0);
                s_psr += r.psr.value_or(0.0);
                s_ex += r.exec.value_or(0.0);
            } else {
                ++n_qa;
                s_em += r.em.value_or(0);
                s_f1 += r.f1.value_or(0.0);
            }
        }
        if (n == 0) continue;
        const auto dn = static_cast<double>(n);
        tok_task.push_back(s_tok / dn);
        tok_run.push_back(s_tok);
        replans.push_back(s_rep / dn);
        cost.push_back(model::to_dollars(s_cost));
        if (n_emb) {
            const auto d = static_cast<double>(n_emb);
            sr.push_back(s_sr / d);
            psr.push_back(s_psr / d);
            ex.push_back(s_ex / d);
        }
        if (n_qa) {
            const auto d = static_cast<double>(n_qa);
            em.push_back(s_em / d);
            f1.push_back(s_f1 / d);
        }
    }
    auto opt = [](const std::vector<double>& v) { return v.empty() ? std::nullopt : std::optional(mean_std(v)); };
    a.sr = opt(sr);
    a.psr = opt(psr);
    a.exec = opt(ex);
    a.em = opt(em);
    a.f1 = opt(f1);
    a.tokens_per_task = mean_std(tok_task);
    a.tokens_per_run = mean_std(tok_run);
    a.replans_per_task = mean_std(replans);
    if (priced) a.cost_per_run_usd = mean_std(cost);
    return a;
}

RunReport run_suite(const std::vector<replan::TaskSpec>& suite, model::ModelBackend& backend,
                    const HarnessOptions& opts) {
    check_ablation(opts.config);
    RunReport report;
    report.config = opts.config;
    report.backend = opts.backend_name;
    report.budget = opts.config.replan_enabled ? opts.budget : 0;
    report.cost_model = opts.cost_model;

    QaResources resources;
    std::vector<std::optional<std::string>> load_errors(suite.size());
    for (std::size_t i = 0; i < suite.size(); ++i) {
        try {
            resources.load_for(suite[i]);
        } catch (const std::exception& e) {
            load_errors[i] = e.what();
        }
    }

    const std::size_t jobs = suite.size() * opts.config.repeats;
    std::vector<TaskRecord> records(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs; j = next++) {
            const std::size_t t = j / opts.config.repeats;
            const std::size_t rep = j % opts.config.repeats;
            if (load_errors[t]) {
                records[j].task_id = suite[t].id;
                records[j].kind = suite[t].kind;
                records[j].repeat = rep;
                records[j].infra_error = *load_errors[t];
                continue;
            }
            records[j] = run_task(suite[t], backend, opts, rep, resources);
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(opts.parallelism, jobs));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    report.records = std::move(records);
    for (const auto& r : report.records) {
        if (r.infra_error) report.completed = false;
    }
    report.aggregates = aggregate(report.records, opts.config.repeats);
    return report;
}

}  // namespace codeplan::eval
