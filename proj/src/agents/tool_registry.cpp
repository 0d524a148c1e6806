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

#include "codeplan/agents/tool_registry.hpp"

#include "codeplan/tools/text_inspector.hpp"

namespace codeplan::agents {

std::string_view to_string(ParamKind k) {
    switch (k) {
        case ParamKind::Text: return "text";
        case ParamKind::Integer: return "integer";
        case ParamKind::Boolean: return "boolean";
    }
    return "?";
}

const ParamSpec* ToolSchema::param(std::string_view n) const {
    for (const auto& p : params) {
        if (p.name == n) return &p;
    }
    return nullptr;
}

const std::vector<std::string>& standard_tool_names() {
    static const std::vector<std::string> names = {"GoogleSearchTool", "VisitTool",  "PageUpTool",
                                                   "PageDownTool",     "FinderTool", "TextInspectorTool"};
    return names;
}

Value ToolSession::state() const {
    Value v = Value::object();
    const auto& doc = browser_.current_doc();
    v["current_doc"] = doc ? Value(*doc) : Value(nullptr);
    v["page_start"] = browser_.page_start();
    v["page_end"] = doc ? browser_.page_end() : 0;
    v["scrolls"] = browser_.scroll_count();
    return v;
}

void ToolRegistry::add(ToolSchema schema, ToolFn fn) {
    if (schema.name.empty()) throw std::invalid_argument("tool name is empty");
    if (by_name_.count(schema.name)) throw std::invalid_argument("tool registered twice: " + schema.name);
    by_name_.emplace(schema.name, entries_.size());
    entries_.push_back({std::move(schema), std::move(fn)});
}

const ToolSchema* ToolRegistry::find(std::string_view name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &entries_[it->second].schema;
}

std::vector<std::string> ToolRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.schema.name);
    return out;
}

namespace {

bool kind_matches(ParamKind k, const Value& v) {
    switch (k) {
        case ParamKind::Text: return v.is_string();
        case ParamKind::Integer: return v.is_number_integer();
        case ParamKind::Boolean: return v.is_boolean();
    }
    return false;
}

}  // namespace

void ToolRegistry::check(const ToolCall& call) const {
    const ToolSchema* s = find(call.tool);
    if (!s) throw UnknownTool(call.tool);
    if (!call.args.is_object()) throw SchemaMismatch(call.tool + ": args must be an object");
    for (const auto& [k, v] : call.args.items()) {
        const ParamSpec* p = s->param(k);
        if (!p) throw SchemaMismatch(call.tool + ": unexpected argument " + k);
        if (!kind_matches(p->kind, v)) {
            throw SchemaMismatch(call.tool + ": argument " + k + " must be " + std::string(to_string(p->kind)));
        }
    }
    for (const auto& p : s->params) {
        if (!call.args.contains(p.name)) throw SchemaMismatch(call.tool + ": missing argument " + p.name);
    }
}

Value ToolRegistry::invoke(ToolSession& session, const ToolCall& call) const {
    check(call);
    return entries_[by_name_.find(call.tool)->second].fn(session, call.args);
}

Value ToolRegistry::to_json() const {
    Value tools = Value::array();
    for (const auto& e : entries_) {
        Value t = Value::object();
        t["name"] = e.schema.name;
        Value params = Value::array();
        for (const auto& p : e.schema.params) params.push_back(Value{{"name", p.name}, {"kind", to_string(p.kind)}});
        t["params"] = params;
        t["pure"] = e.schema.pure;
        t["predicate"] = e.schema.predicate;
        t["summary"] = e.schema.summary;
        tools.push_back(std::move(t));
    }
    return Value{{"tools", tools}};
}

ToolRegistry ToolRegistry::standard() {
    ToolRegistry r;
    auto text = [](const Value& a, const char* k) { return a.at(k).get<std::string>(); };

    r.add({"GoogleSearchTool", {{"query", ParamKind::Text}}, true, false, "ranked hits over the local corpus"},
          [text](ToolSession& s, const Value& a) {
              Value hits = Value::array();
              for (const auto& h : tools::search(text(a, "query"), s.corpus())) {
                  hits.push_back(Value{{"url", h.url}, {"title", h.title}});
              }
              return hits;
          });
    r.add({"VisitTool", {{"url", ParamKind::Text}}, false, false, "open a document at its first page"},
          [text](ToolSession& s, const Value& a) { return Value(s.browser().visit(text(a, "url"))); });
    r.add({"PageUpTool", {}, false, false, "move the viewport up one page"},
          [](ToolSession& s, const Value&) { return Value(s.browser().page_up()); });
    r.add({"PageDownTool", {}, false, false, "move the viewport down one page"},
          [](ToolSession& s, const Value&) { return Value(s.browser().page_down()); });
    r.add({"FinderTool", {{"keyword", ParamKind::Text}}, false, false, "paragraphs of the open document with a keyword"},
          [text](ToolSession& s, const Value& a) {
              Value out = Value::array();
              for (const auto& p : s.browser().finder(text(a, "keyword"))) out.push_back(p);
              return out;
          });
    r.add({"TextInspectorTool",
           {{"text", ParamKind::Text}, {"focus", ParamKind::Text}, {"count", ParamKind::Integer}},
           true, false, "snippets of a text related to a focus phrase"},
          [text](ToolSession&, const Value& a) {
              auto count = a.at("count").get<std::int64_t>();
              if (count <= 0) throw tools::ToolError("count must be positive");
              Value out = Value::array();
              for (const auto& p : tools::inspect(text(a, "text"), text(a, "focus"), static_cast<std::size_t>(count))) {
                  out.push_back(p);
              }
              return out;
          });
    r.add({kContainsProbe, {{"text", ParamKind::Text}}, false, true, "does the viewport mention a phrase"},
          [text](ToolSession& s, const Value& a) { return Value(s.browser().contains(text(a, "text"))); });
    return r;
}

}  // namespace codeplan::agents
