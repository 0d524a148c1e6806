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

#include "codeplan/dsl/plan_ast.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace codeplan::dsl {

namespace {

constexpr std::array<std::pair<Relation, std::string_view>, 9> kRelationNames = {{
    {Relation::Close, "close"},
    {Relation::Holding, "holding"},
    {Relation::Visible, "visible"},
    {Relation::Contains, "contains"},
    {Relation::Eaten, "eaten"},
    {Relation::SatOn, "sat_on"},
    {Relation::Grabbed, "grabbed"},
    {Relation::Open, "open"},
    {Relation::On, "on"},
}};

}  // namespace

std::string_view to_string(Relation r) {
    for (const auto& [rel, name] : kRelationNames) {
        if (rel == r) return name;
    }
    return "?";
}

std::optional<Relation> relation_from_string(std::string_view s) {
    for (const auto& [rel, name] : kRelationNames) {
        if (name == s) return rel;
    }
    return std::nullopt;
}

bool is_plan_relation(Relation r) {
    return r == Relation::Close || r == Relation::Holding || r == Relation::Visible ||
           r == Relation::Contains;
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s.front());
    if (!std::isalpha(head) && head != '_') return false;
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && u != '_') return false;
    }
    return true;
}

bool is_plan_name(std::string_view s) {
    if (s.empty() || s.front() < 'a' || s.front() > 'z') return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

std::size_t count_statements(const Block& block, bool include_comments) {
    std::size_t n = 0;
    walk_statements(block, [&](const Statement& st, int) {
        if (include_comments || !st.is<Comment>()) ++n;
    });
    return n;
}

}  // namespace codeplan::dsl
