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

#include "codeplan/eval/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace codeplan::eval {

namespace {

template <typename T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const Json& v, const char* key) {
    if (!v.contains(key) || v.at(key).is_null()) return std::nullopt;
    return v.at(key).get<T>();
}

Json ms(const MeanStd& m) { return Json{{"mean", m.mean}, {"std", m.std}}; }
Json ms(const std::optional<MeanStd>& m) { return m ? ms(*m) : Json(nullptr); }

MeanStd ms_from(const Json& v) { return {v.at("mean").get<double>(), v.at("std").get<double>()}; }
std::optional<MeanStd> ms_opt(const Json& v, const char* key) {
    if (!v.contains(key) || v.at(key).is_null()) return std::nullopt;
    return ms_from(v.at(key));
}

Json definitions() {
    return Json{
        {"exec", "succeeded action steps / attempted action steps over all plans of an episode; 0/0 = 1"},
        {"em", "normalized exact match: lowercase, punctuation and articles removed, whitespace collapsed"},
        {"f1", "token-overlap F1 under the same normalization"},
        {"aggregates", "mean over the records of each repeat, then mean and sample std across repeats"},
        {"tokens_per_task", "input + output tokens of one task episode"},
        {"tokens_per_run", "input + output tokens summed over all tasks of one repeat"},
        {"cost", "picodollars (1e-12 USD) per record; cost_per_run_usd in dollars"},
    };
}

}  // namespace

Json to_json(const TaskRecord& r) {
    Json v;
    v["task_id"] = r.task_id;
    v["kind"] = replan::to_string(r.kind);
    v["repeat"] = r.repeat;
    v["seed"] = r.seed;
    v["episode_id"] = r.episode_id;
    v["sr"] = opt(r.sr);
    v["psr"] = opt(r.psr);
    v["exec"] = opt(r.exec);
    v["em"] = opt(r.em);
    v["f1"] = opt(r.f1);
    v["prediction"] = r.prediction;
    v["input_tokens"] = r.usage.input_tokens;
    v["output_tokens"] = r.usage.output_tokens;
    v["cost"] = opt(r.cost);
    v["replans"] = r.replans;
    v["model_calls"] = r.model_calls;
    v["untranslated_comments"] = r.untranslated_comments;
    v["abort_reason"] = opt(r.abort_reason);
    v["infra_error"] = opt(r.infra_error);
    return v;
}

TaskRecord record_from_json(const Json& v) {
    TaskRecord r;
    r.task_id = v.at("task_id").get<std::string>();
    r.kind = v.at("kind").get<std::string>() == "qa" ? replan::TaskKind::Qa : replan::TaskKind::Embodied;
    r.repeat = v.at("repeat").get<std::size_t>();
    r.seed = v.at("seed").get<unsigned>();
    r.episode_id = v.at("episode_id").get<std::string>();
    r.sr = get_opt<double>(v, "sr");
    r.psr = get_opt<double>(v, "psr");
    r.exec = get_opt<double>(v, "exec");
    r.em = get_opt<int>(v, "em");
    r.f1 = get_opt<double>(v, "f1");
    r.prediction = v.at("prediction").get<std::string>();
    r.usage.input_tokens = v.at("input_tokens").get<std::int64_t>();
    r.usage.output_tokens = v.at("output_tokens").get<std::int64_t>();
    r.cost = get_opt<model::Picodollars>(v, "cost");
    r.replans = v.at("replans").get<std::size_t>();
    r.model_calls = v.at("model_calls").get<std::size_t>();
    r.untranslated_comments = v.at("untranslated_comments").get<bool>();
    r.abort_reason = get_opt<std::string>(v, "abort_reason");
    r.infra_error = get_opt<std::string>(v, "infra_error");
    return r;
}

Json to_json(const Aggregates& a) {
    Json v;
    v["records"] = a.records;
    v["embodied"] = a.embodied;
    v["qa"] = a.qa;
    v["repeats"] = a.repeats;
    v["sr"] = ms(a.sr);
    v["psr"] = ms(a.psr);
    v["exec"] = ms(a.exec);
    v["em"] = ms(a.em);
    v["f1"] = ms(a.f1);
    v["tokens_per_task"] = ms(a.tokens_per_task);
    v["tokens_per_run"] = ms(a.tokens_per_run);
    v["replans_per_task"] = ms(a.replans_per_task);
    v["cost_per_run_usd"] = ms(a.cost_per_run_usd);
    return v;
}

Json to_json(const RunReport& r) {
    Json v;
    v["schema"] = r.schema;
    v["definitions"] = definitions();
    v["config"] = to_json(r.config);
    v["backend"] = r.backend;
    v["budget"] = r.budget;
    v["cost_model"] = r.cost_model;
    v["completed"] = r.completed;
    v["aggregates"] = to_json(r.aggregates);
    Json recs = Json::array();
    for (const auto& rec : r.records) recs.push_back(to_json(rec));
    v["records"] = std::move(recs);
    return v;
}

RunReport report_from_json(const Json& v) {
    if (!v.is_object() || v.value("schema", "") != kReportSchema) {
        throw std::runtime_error(std::string("not a ") + kReportSchema + " document");
    }
    RunReport r;
    r.schema = v.at("schema").get<std::string>();
    r.config = parse_ablation(v.at("config"));
    r.backend = v.at("backend").get<std::string>();
    r.budget = v.at("budget").get<std::size_t>();
    r.cost_model = v.at("cost_model").get<std::string>();
    r.completed = v.at("completed").get<bool>();
    for (const auto& rec : v.at("records")) r.records.push_back(record_from_json(rec));
    const auto& a = v.at("aggregates");
    r.aggregates.records = a.at("records").get<std::size_t>();
    r.aggregates.embodied = a.at("embodied").get<std::size_t>();
    r.aggregates.qa = a.at("qa").get<std::size_t>();
    r.aggregates.repeats = a.at("repeats").get<std::size_t>();
    r.aggregates.sr = ms_opt(a, "sr");
    r.aggregates.psr = ms_opt(a, "psr");
    r.aggregates.exec = ms_opt(a, "exec");
    r.aggregates.em = ms_opt(a, "em");
    r.aggregates.f1 = ms_opt(a, "f1");
    r.aggregates.tokens_per_task = ms_from(a.at("tokens_per_task"));
    r.aggregates.tokens_per_run = ms_from(a.at("tokens_per_run"));
    r.aggregates.replans_per_task = ms_from(a.at("replans_per_task"));
    r.aggregates.cost_per_run_usd = ms_opt(a, "cost_per_run_usd");
    return r;
}

std::string records_jsonl(const RunReport& r) {
    std::string out;
    for (const auto& rec : r.records) out += to_json(rec).dump() + "\n";
    return out;
}

void write_report(const std::filesystem::path& dir, const RunReport& r) {
    std::filesystem::create_directories(dir);
    std::ofstream rep(dir / "report.json");
    rep << to_json(r).dump(2) << "\n";
    std::ofstream recs(dir / "records.jsonl");
    recs << records_jsonl(r);
    if (!rep || !recs) throw std::runtime_error("cannot write report into " + dir.string());
}

RunReport load_report(const std::filesystem::path& report_json) {
    std::ifstream in(report_json);
    if (!in) throw std::runtime_error("cannot open " + report_json.string());
    return report_from_json(Json::parse(in));
}

std::string render_table(const RunReport& r) {
    std::ostringstream out;
    out << "config " << r.config.name << "  backend " << r.backend << "  budget " << r.budget << "  records "
        << r.aggregates.records << " (" << r.aggregates.embodied << " embodied, " << r.aggregates.qa << " qa), repeats "
        << r.aggregates.repeats << (r.completed ? "" : "  INCOMPLETE") << "\n";
    auto row = [&](const char* name, const std::optional<MeanStd>& m, int precision) {
        out << std::left << std::setw(18) << name;
        if (m) {
            out << std::right << std::fixed << std::setprecision(precision) << std::setw(14) << m->mean << " +/- "
                << m->std;
        } else {
            out << std::right << std::setw(14) << "-";
        }
        out << "\n";
    };
    row("SR", r.aggregates.sr, 3);
    row("PSR", r.aggregates.psr, 3);
    row("Exec", r.aggregates.exec, 3);
    row("EM", r.aggregates.em, 3);
    row("F1", r.aggregates.f1, 3);
    row("tokens/task", r.aggregates.tokens_per_task, 1);
    row("tokens/run", r.aggregates.tokens_per_run, 1);
    row("replans/task", r.aggregates.replans_per_task, 2);
    row("cost/run (USD)", r.aggregates.cost_per_run_usd, 6);
    return out.str();
}

}  // namespace codeplan::eval
