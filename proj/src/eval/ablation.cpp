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

#include "codeplan/eval/ablation.hpp"

namespace codeplan::eval {

using replan::CommentMode;
using replan::PromptFormat;

unsigned AblationConfig::seed_for(std::size_t repeat) const {
    if (seeds.empty()) return static_cast<unsigned>(repeat);
    return seeds[repeat % seeds.size()];
}

void check_ablation(const AblationConfig& cfg) {
    if (cfg.repeats == 0) throw AblationError("repeats must be at least 1");
    if (cfg.format == PromptFormat::Nl && cfg.comments == CommentMode::Cn) {
        throw AblationError("CN comments apply to the code format only");
    }
}

const std::vector<AblationConfig>& ablation_presets() {
    auto row = [](std::string name, PromptFormat f, CommentMode c, bool a, bool r) {
        AblationConfig cfg;
        cfg.name = std::move(name);
        cfg.format = f;
        cfg.comments = c;
        cfg.assert_enabled = a;
        cfg.replan_enabled = r;
        return cfg;
    };
    static const std::vector<AblationConfig> rows = {
        row("nl", PromptFormat::Nl, CommentMode::En, false, false),
        row("nl+replan", PromptFormat::Nl, CommentMode::En, false, true),
        row("code", PromptFormat::Code, CommentMode::None, false, false),
        row("code+replan", PromptFormat::Code, CommentMode::None, false, true),
        row("code+assert", PromptFormat::Code, CommentMode::None, true, false),
        row("code+assert+replan", PromptFormat::Code, CommentMode::None, true, true),
        row("code+cn+assert+replan", PromptFormat::Code, CommentMode::Cn, true, true),
        row("code+en", PromptFormat::Code, CommentMode::En, false, false),
        row("code+en+replan", PromptFormat::Code, CommentMode::En, false, true),
        row("code+en+assert", PromptFormat::Code, CommentMode::En, true, false),
        row("code+en+assert+replan", PromptFormat::Code, CommentMode::En, true, true),
    };
    return rows;
}

const AblationConfig& ablation_preset(std::size_t row) {
    if (row < 1 || row > ablation_presets().size()) throw std::out_of_range("no ablation row " + std::to_string(row));
    return ablation_presets()[row - 1];
}

namespace {

const char* format_name(PromptFormat f) { return f == PromptFormat::Nl ? "nl" : "code"; }

const char* comment_name(CommentMode c) {
    switch (c) {
        case CommentMode::None: return "none";
        case CommentMode::En: return "en";
        case CommentMode::Cn: return "cn";
    }
    return "?";
}

}  // namespace

nlohmann::ordered_json to_json(const AblationConfig& cfg) {
    nlohmann::ordered_json v;
    v["name"] = cfg.name;
    v["format"] = format_name(cfg.format);
    v["comments"] = comment_name(cfg.comments);
    v["assert"] = cfg.assert_enabled;
    v["replan"] = cfg.replan_enabled;
    v["seeds"] = cfg.seeds;
    v["repeats"] = cfg.repeats;
    return v;
}

AblationConfig parse_ablation(const nlohmann::ordered_json& v) {
    if (!v.is_object()) throw AblationError("ablation config must be an object");
    AblationConfig cfg;
    try {
        if (v.contains("preset")) cfg = ablation_preset(v.at("preset").get<std::size_t>());
        for (const auto& [k, x] : v.items()) {
            if (k == "preset") continue;
            if (k == "name") {
                cfg.name = x.get<std::string>();
            } else if (k == "format") {
                auto f = x.get<std::string>();
                if (f != "nl" && f != "code") throw AblationError("format must be nl or code");
                cfg.format = f == "nl" ? PromptFormat::Nl : PromptFormat::Code;
            } else if (k == "comments") {
                auto c = x.get<std::string>();
                if (c == "none") {
                    cfg.comments = CommentMode::None;
                } else if (c == "en") {
                    cfg.comments = CommentMode::En;
                } else if (c == "cn") {
                    cfg.comments = CommentMode::Cn;
                } else {
                    throw AblationError("comments must be none, en or cn");
                }
            } else if (k == "assert") {
                cfg.assert_enabled = x.get<bool>();
            } else if (k == "replan") {
                cfg.replan_enabled = x.get<bool>();
            } else if (k == "seeds") {
                cfg.seeds = x.get<std::vector<unsigned>>();
            } else if (k == "repeats") {
                cfg.repeats = x.get<std::size_t>();
            } else {
                throw AblationError("unknown ablation key " + k);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw AblationError(std::string("bad ablation config: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw AblationError(e.what());
    }
    check_ablation(cfg);
    return cfg;
}

replan::PromptOptions prompt_options(const AblationConfig& cfg, const dsl::TranslationTable* translations) {
    replan::PromptOptions o;
    o.format = cfg.format;
    o.comments = cfg.comments;
    o.asserts = cfg.assert_enabled;
    o.translations = translations;
    return o;
}

}  // namespace codeplan::eval
