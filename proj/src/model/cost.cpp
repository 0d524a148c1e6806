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

#include "codeplan/model/cost.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace codeplan::model {

CostModel CostModel::per_million(std::string name, double input_usd, double output_usd) {
    if (!(input_usd >= 0) || !(output_usd >= 0)) throw std::invalid_argument("negative price for " + name);
    CostModel m;
    m.name = std::move(name);
    m.input_price = std::llround(input_usd * 1e6);
    m.output_price = std::llround(output_usd * 1e6);
    return m;
}

Picodollars cost(const TokenUsage& usage, const CostModel& m) {
    return static_cast<Picodollars>(usage.input_tokens) * m.input_price +
           static_cast<Picodollars>(usage.output_tokens) * m.output_price;
}

void CostTable::add(CostModel m) {
    std::string key = m.name;
    models_[key] = std::move(m);
}

const CostModel& CostTable::get(std::string_view name) const {
    auto it = models_.find(std::string(name));
    if (it == models_.end()) throw UnknownModel(std::string(name));
    return it->second;
}

std::vector<std::string> CostTable::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : models_) out.push_back(k);
    return out;
}

CostTable CostTable::parse(std::string_view json_text) {
    CostTable t;
    try {
        auto j = nlohmann::json::parse(json_text);
        for (const auto& [name, prices] : j.at("models").items()) {
            t.add(CostModel::per_million(name, prices.at("input_per_million").get<double>(),
                                         prices.at("output_per_million").get<double>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad cost config: ") + e.what());
    }
    return t;
}

CostTable CostTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read cost config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

}  // namespace codeplan::model
