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

#include <string>
#include <string_view>
#include <vector>

#include "codeplan/exec/executor.hpp"

namespace codeplan::eval {

// Succeeded over attempted action steps; comments are not actions. 0/0 is 1.
double exec_fraction(const exec::ExecutionTrace& trace);
// Pooled over the traces of one episode.
double exec_fraction(const std::vector<exec::ExecutionTrace>& traces);

// Lowercase, drop ASCII punctuation, drop the words a/an/the, collapse spaces.
std::string normalize_answer(std::string_view s);
std::vector<std::string> answer_tokens(std::string_view s);  // of the normalized text

struct QaScore {
    int em = 0;
    double f1 = 0.0;
};

// em: normalized equality. f1 over token multisets, 2*common/(|pred|+|gold|);
// when either side has no tokens, f1 = em.
QaScore qa_score(std::string_view prediction, std::string_view gold);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation, 0 below two values
};

MeanStd mean_std(const std::vector<double>& xs);

}  // namespace codeplan::eval
