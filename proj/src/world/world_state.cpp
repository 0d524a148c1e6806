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

#include "codeplan/world/world_state.hpp"

#include <algorithm>

namespace codeplan::world {

std::string_view to_string(Flag f) {
    switch (f) {
        case Flag::Grabbed: return "grabbed";
        case Flag::Eaten: return "eaten";
        case Flag::SatOn: return "sat_on";
        case Flag::Open: return "open";
        case Flag::On: return "on";
    }
    return "?";
}

std::string_view to_string(Property p) {
    switch (p) {
        case Property::Sittable: return "sittable";
        case Property::Edible: return "edible";
        case Property::Container: return "container";
    }
    return "?";
}

bool WorldState::has_flag(const std::string& obj, Flag f) const {
    auto it = object_states.find(obj);
    return it != object_states.end() && it->second.count(f);
}

bool WorldState::has_property(const std::string& obj, Property p) const {
    auto it = objects.find(obj);
    return it != objects.end() && it->second.count(p);
}

bool WorldState::is_held(const std::string& obj) const {
    return std::find(held.begin(), held.end(), obj) != held.end();
}

std::vector<std::string> WorldState::objects_in(const std::string& room) const {
    std::vector<std::string> out;
    for (const auto& [obj, loc] : object_locations) {
        if (loc == room) out.push_back(obj);
    }
    return out;
}

std::vector<std::string> WorldState::all_ids() const {
    std::vector<std::string> out;
    for (const auto& [obj, props] : objects) out.push_back(obj);
    out.insert(out.end(), rooms.begin(), rooms.end());
    return out;
}

std::vector<std::string> check_invariants(const WorldState& s) {
    std::vector<std::string> bad;
    if (!s.rooms.count(s.agent_room)) bad.push_back("agent room " + s.agent_room + " is not a room");
    if (s.held.size() > kHandCapacity) bad.push_back("more than two held items");

    std::set<std::string> held_set(s.held.begin(), s.held.end());
    if (held_set.size() != s.held.size()) bad.push_back("duplicate held item");
    for (const auto& h : s.held) {
        if (!s.has_flag(h, Flag::Grabbed)) bad.push_back(h + " held but not grabbed");
        if (s.object_locations.count(h)) bad.push_back(h + " held but also placed in a room");
    }
    for (const auto& [obj, flags] : s.object_states) {
        if (flags.count(Flag::Grabbed) && !held_set.count(obj)) bad.push_back(obj + " grabbed but not held");
        if (flags.count(Flag::Eaten)) {
            if (s.object_locations.count(obj)) bad.push_back(obj + " eaten but still located");
            if (s.proximity.count(obj)) bad.push_back(obj + " eaten but close");
            if (s.visible.count(obj)) bad.push_back(obj + " eaten but visible");
            if (held_set.count(obj)) bad.push_back(obj + " eaten but held");
        }
    }
    for (const auto& p : s.proximity) {
        if (!s.visible.count(p)) bad.push_back(p + " close but not visible");
    }
    for (const auto& v : s.visible) {
        auto loc = s.object_locations.find(v);
        bool in_room = loc != s.object_locations.end() && loc->second == s.agent_room;
        if (!in_room && !held_set.count(v)) bad.push_back(v + " visible outside agent room");
    }
    for (const auto& [obj, loc] : s.object_locations) {
        if (!s.rooms.count(loc)) bad.push_back(obj + " located in unknown room " + loc);
    }
    return bad;
}

}  // namespace codeplan::world
