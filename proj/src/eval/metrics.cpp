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

#include "codeplan/eval/metrics.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace codeplan::eval {

double exec_fraction(const exec::ExecutionTrace& trace) {
    if (trace.attempted == 0) return 1.0;
    return static_cast<double>(trace.succeeded) / static_cast<double>(trace.attempted);
}

double exec_fraction(const std::vector<exec::ExecutionTrace>& traces) {
    std::size_t ok = 0, tried = 0;
    for (const auto& t : traces) {
        ok += t.succeeded;
        tried += t.attempted;
    }
    return tried == 0 ? 1.0 : static_cast<double>(ok) / static_cast<double>(tried);
}

std::vector<std::string> answer_tokens(std::string_view s) {
    std::string cleaned;
    cleaned.reserve(s.size());
    for (unsigned char c : s) {
        if (c < 0x80 && std::ispunct(c)) continue;
        cleaned.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    }
    std::vector<std::string> out;
    std::istringstream in(cleaned);
    std::string w;
    while (in >> w) {
        if (w == "a" || w == "an" || w == "the") continue;
        out.push_back(w);
    }
    return out;
}

std::string normalize_answer(std::string_view s) {
    std::string out;
    for (const auto& w : answer_tokens(s)) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

QaScore qa_score(std::string_view prediction, std::string_view gold) {
    const auto p = answer_tokens(prediction);
    const auto g = answer_tokens(gold);
    QaScore s;
    s.em = p == g ? 1 : 0;
    if (p.empty() || g.empty()) {
        s.f1 = s.em;
        return s;
    }
    std::map<std::string, long> counts;
    for (const auto& w : g) ++counts[w];
    long common = 0;
    for (const auto& w : p) {
        auto it = counts.find(w);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++common;
        }
    }
    s.f1 = 2.0 * static_cast<double>(common) / static_cast<double>(p.size() + g.size());
    return s;
}

MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd m;
    if (xs.empty()) return m;
    double sum = 0.0;
    for (double x : xs) sum += x;
    m.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return m;
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return m;
}

}  // namespace codeplan::eval
