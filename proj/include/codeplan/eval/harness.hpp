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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "codeplan/agents/system_prompt.hpp"
#include "codeplan/eval/ablation.hpp"
#include "codeplan/eval/metrics.hpp"
#include "codeplan/model/backend.hpp"
#include "codeplan/model/cost.hpp"
#include "codeplan/replan/episode.hpp"
#include "codeplan/replan/task_spec.hpp"
#include "codeplan/tools/corpus.hpp"

namespace codeplan::eval {

inline constexpr const char* kReportSchema = "codeplan.report/1";

struct HarnessOptions {
    AblationConfig config;
    std::size_t budget = replan::kDefaultReplanBudget;  // used when replanning is on
    exec::ExecLimits limits;
    std::size_t parallelism = 1;
    const model::CostTable* costs = nullptr;
    std::string cost_model;  // priced only when `costs` knows it
    const dsl::TranslationTable* translations = nullptr;
    std::string backend_name = "scripted";
};

struct TaskRecord {
    std::string task_id;
    replan::TaskKind kind = replan::TaskKind::Embodied;
    std::size_t repeat = 0;
    unsigned seed = 0;
    std::string episode_id;

    std::optional<double> sr;  // embodied only
    std::optional<double> psr;
    std::optional<double> exec;
    std::optional<int> em;  // QA only
    std::optional<double> f1;
    std::string prediction;

    model::TokenUsage usage;
    std::optional<model::Picodollars> cost;
    std::size_t replans = 0;
    std::size_t model_calls = 0;
    bool untranslated_comments = false;
    std::optional<std::string> abort_reason;  // budget ran out or the backend failed
    std::optional<std::string> infra_error;   // anything that is not the model's fault

    std::vector<replan::TranscriptEntry> transcript;  // kept in memory, not reported
};

struct Aggregates {
    std::size_t records = 0;
    std::size_t embodied = 0;
    std::size_t qa = 0;
    std::size_t repeats = 0;
    // Per repeat: the mean over that repeat's records; then mean and std across repeats.
    std::optional<MeanStd> sr, psr, exec, em, f1;
    MeanStd tokens_per_task;  // input + output tokens of one task
    MeanStd tokens_per_run;   // summed over the tasks of one repeat
    MeanStd replans_per_task;
    std::optional<MeanStd> cost_per_run_usd;  // when every record is priced
};

// Aggregates are a pure function of the records.
Aggregates aggregate(const std::vector<TaskRecord>& records, std::size_t repeats);

struct RunReport {
    std::string schema = kReportSchema;
    AblationConfig config;
    std::string backend;
    std::size_t budget = 0;
    std::string cost_model;
    std::vector<TaskRecord> records;  // task order, then repeat
    Aggregates aggregates;
    bool completed = true;  // no infrastructure errors
};

// Shared, read-only inputs of QA tasks, loaded once per suite.
struct QaResources {
    std::map<std::string, std::shared_ptr<const tools::Corpus>> corpora;  // by corpus dir
    std::map<std::string, agents::AgentConfig> configs;                   // by agent config path

    void load_for(const replan::TaskSpec& task);
};

// One task, one repeat. Never throws: failures land in `infra_error`.
TaskRecord run_task(const replan::TaskSpec& task, model::ModelBackend& backend, const HarnessOptions& opts,
                    std::size_t repeat, QaResources& resources);

// Every task x repeat, up to `parallelism` at a time. Embodied tasks go
// through the feedback loop, QA tasks through the multi-agent loop.
RunReport run_suite(const std::vector<replan::TaskSpec>& suite, model::ModelBackend& backend,
                    const HarnessOptions& opts);

}  // namespace codeplan::eval
