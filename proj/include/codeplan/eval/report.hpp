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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "codeplan/eval/harness.hpp"

namespace codeplan::eval {

using Json = nlohmann::ordered_json;

Json to_json(const TaskRecord& r);
TaskRecord record_from_json(const Json& v);
Json to_json(const Aggregates& a);
Json to_json(const RunReport& r);

// Reads a report written by `to_json`. Throws std::runtime_error on a schema
// mismatch.
RunReport report_from_json(const Json& v);

// One record per line.
std::string records_jsonl(const RunReport& r);

// Writes report.json and records.jsonl into `dir`, creating it.
void write_report(const std::filesystem::path& dir, const RunReport& r);
RunReport load_report(const std::filesystem::path& report_json);

// Aggregates as an aligned text table.
std::string render_table(const RunReport& r);

}  // namespace codeplan::eval
