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

#include "codeplan/world/world_files.hpp"

#include <fstream>
#include <sstream>

#include "codeplan/dsl/parser.hpp"
#include "codeplan/dsl/plan_ast.hpp"

namespace codeplan::world {

namespace {

std::string strip_comment(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) line.pop_back();
    return line;
}

std::string rest_of(std::istringstream& fields) {
    std::string rest;
    std::getline(fields, rest);
    auto first = rest.find_first_not_of(" \t");
    return first == std::string::npos ? std::string{} : rest.substr(first);
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WorldFile parse_world(std::string_view text, const std::string& origin) {
    WorldFile wf;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    std::vector<std::pair<int, std::pair<std::string, std::string>>> placements;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream fields(strip_comment(raw));
        std::string kind, id;
        if (!(fields >> kind)) continue;
        if (!(fields >> id) || !dsl::is_identifier(id)) throw FormatError(origin, line_no, "expected an id");
        if (wf.state.exists(id)) throw FormatError(origin, line_no, "duplicate id " + id);
        if (kind == "room") {
            wf.state.rooms.insert(id);
        } else if (kind == "object") {
            std::string in_kw, room;
            if (!(fields >> in_kw >> room) || in_kw != "in") {
                throw FormatError(origin, line_no, "expected 'object <id> in <room>'");
            }
            std::set<Property> props;
            std::string prop;
            while (fields >> prop) {
                if (prop == "sittable") props.insert(Property::Sittable);
                else if (prop == "edible") props.insert(Property::Edible);
                else if (prop == "container") props.insert(Property::Container);
                else throw FormatError(origin, line_no, "unknown property " + prop);
            }
            wf.state.objects[id] = std::move(props);
            placements.push_back({line_no, {id, room}});
        } else {
            throw FormatError(origin, line_no, "unknown record " + kind);
        }
        wf.order.push_back(id);
    }
    for (const auto& [line, p] : placements) {
        if (!wf.state.is_room(p.second)) throw FormatError(origin, line, "unknown room " + p.second);
        wf.state.object_locations[p.first] = p.second;
    }
    return wf;
}

WorldFile load_world(const std::filesystem::path& path) {
    return parse_world(read_text_file(path), path.string());
}

std::string TaskFile::record(const std::string& key, const std::string& fallback) const {
    auto it = records.find(key);
    return it == records.end() ? fallback : it->second;
}

std::vector<std::string> TaskFile::records_of(const std::string& key) const {
    std::vector<std::string> out;
    auto [lo, hi] = records.equal_range(key);
    for (auto it = lo; it != hi; ++it) out.push_back(it->second);
    return out;
}

TaskFile parse_task_file(std::string_view text, const std::string& origin) {
    TaskFile tf;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto first = raw.find_first_not_of(" \t");
        if (first == std::string::npos || raw[first] == '#') continue;
        std::istringstream fields(raw);
        std::string key;
        fields >> key;
        if (key == "task") {
            fields >> tf.name;
            if (!dsl::is_plan_name(tf.name)) throw FormatError(origin, line_no, "bad task name");
        } else if (key == "goal") {
            try {
                tf.goals.predicates.push_back(dsl::parse_predicate(rest_of(fields), true));
            } catch (const dsl::ParseError& e) {
                throw FormatError(origin, line_no, std::string("bad goal: ") + e.what());
            }
        } else if (key == "init") {
            std::string who;
            fields >> who >> tf.init_room;
            if (who != "agent" || tf.init_room.empty()) {
                throw FormatError(origin, line_no, "expected 'init agent <room>'");
            }
        } else {
            tf.records.emplace(key, rest_of(fields));
        }
    }
    if (tf.name.empty()) throw FormatError(origin, 0, "missing 'task <name>'");
    return tf;
}

TaskFile load_task_file(const std::filesystem::path& path) {
    return parse_task_file(read_text_file(path), path.string());
}

}  // namespace codeplan::world
