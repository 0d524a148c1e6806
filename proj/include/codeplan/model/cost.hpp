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

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace codeplan::model {

struct TokenUsage {
    std::uint64_t input_tokens = 0;
    std::uint64_t output_tokens = 0;

    std::uint64_t total() const { return input_tokens + output_tokens; }
    TokenUsage& operator+=(const TokenUsage& o) {
        input_tokens += o.input_tokens;
        output_tokens += o.output_tokens;
        return *this;
    }
    friend TokenUsage operator+(TokenUsage a, const TokenUsage& b) { return a += b; }
    bool operator==(const TokenUsage&) const = default;
};

// Money is kept in integer picodollars so sums of costs are exact.
using Picodollars = std::int64_t;

inline double to_dollars(Picodollars p) { return static_cast<double>(p) / 1e12; }

// Prices in picodollars per token; one dollar per million tokens is 1e6.
struct CostModel {
    std::string name;
    std::int64_t input_price = 0;
    std::int64_t output_price = 0;

    // Takes dollars per million tokens, rounded to a millionth of a dollar.
    static CostModel per_million(std::string name, double input_usd, double output_usd);

    double input_per_million() const { return static_cast<double>(input_price) / 1e6; }
    double output_per_million() const { return static_cast<double>(output_price) / 1e6; }
};

class UnknownModel : public std::runtime_error {
public:
    explicit UnknownModel(const std::string& name) : std::runtime_error("no cost model for " + name) {}
};

Picodollars cost(const TokenUsage& usage, const CostModel& model);

// Registered price pairs, usually loaded from a JSON config:
// {"models": {"<name>": {"input_per_million": x, "output_per_million": y}}}
class CostTable {
public:
    void add(CostModel m);
    const CostModel& get(std::string_view name) const;
    bool contains(std::string_view name) const { return models_.count(std::string(name)) != 0; }
    Picodollars cost(const TokenUsage& usage, std::string_view name) const { return model::cost(usage, get(name)); }
    std::vector<std::string> names() const;

    static CostTable parse(std::string_view json_text);
    static CostTable load(const std::filesystem::path& path);

private:
    std::map<std::string, CostModel> models_;
};

}  // namespace codeplan::model
